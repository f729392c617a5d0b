//! Surface-definition expression language.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?          // right-associative
//! atom   := number | 'pi' | variable | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! so that `^` binds tighter than unary minus, which binds tighter than
//! `*`, `/`.  The exponent of `^` must be a constant expression (no
//! variables); this keeps second-order propagation total.  Parsed
//! expressions evaluate to a [`Jet2`] by forward-mode differentiation.

use crate::jets::{FieldError, Jet2, ScalarField};
use crate::Point;
use std::fmt;

/// Functions available in the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Atan => "atan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "asin" => Func::Asin,
            "acos" => Func::Acos,
            "atan" => Func::Atan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// Abstract syntax tree of a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Num(f64),
    Pi,
    /// Chart variable: axis index and spelling.
    Var(usize, String),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    /// Power with a constant exponent subtree (enforced at parse time).
    Pow(Box<ExprAst>, Box<ExprAst>),
    Call(Func, Box<ExprAst>),
}

impl ExprAst {
    fn is_atom(&self) -> bool {
        matches!(
            self,
            ExprAst::Num(_) | ExprAst::Pi | ExprAst::Var(..) | ExprAst::Call(..)
        )
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Neg(..) => 3,
            ExprAst::Pow(..) => 4,
            _ => 5,
        }
    }

    fn contains_var(&self) -> bool {
        match self {
            ExprAst::Num(_) | ExprAst::Pi => false,
            ExprAst::Var(..) => true,
            ExprAst::Neg(a) | ExprAst::Call(_, a) => a.contains_var(),
            ExprAst::Add(a, b)
            | ExprAst::Sub(a, b)
            | ExprAst::Mul(a, b)
            | ExprAst::Div(a, b)
            | ExprAst::Pow(a, b) => a.contains_var() || b.contains_var(),
        }
    }
}

/// Parse failure, with byte offset and expected-token summary.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: &'static str,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number `{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s = &text[start..i];
                let v: f64 = s.parse().map_err(|_| ParseError {
                    offset: start,
                    expected: "a numeric literal",
                    found: format!("`{s}`"),
                })?;
                toks.push((Tok::Num(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    expected: "an operand or operator",
                    found: format!("`{ch}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    chart: [&'a str; 3],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or("end of input".to_string(), |(t, _)| t.describe())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, expected: &'static str) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected,
            found: self.found(),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            Ok(ExprAst::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let exp_offset = self.offset();
            let exp = self.exponent()?;
            if exp.contains_var() {
                return Err(ParseError {
                    offset: exp_offset,
                    expected: "a constant exponent (no variables)",
                    found: format!("`{}`", print(&exp)),
                });
            }
            return Ok(ExprAst::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    /// Exponent operand: optional minus signs then a power (right-assoc `^`).
    fn exponent(&mut self) -> Result<ExprAst, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.exponent()?)));
        }
        self.power()
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.bump();
                Ok(ExprAst::Num(v))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("`)`"))
                    }
                }
            }
            Some(Tok::Ident(name)) => {
                let offset = self.offset();
                self.bump();
                if name == "pi" {
                    return Ok(ExprAst::Pi);
                }
                if let Some(f) = Func::from_name(&name) {
                    if !matches!(self.peek(), Some(Tok::LParen)) {
                        return Err(self.err("`(` after function name"));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    return match self.bump() {
                        Some(Tok::RParen) => Ok(ExprAst::Call(f, Box::new(arg))),
                        _ => {
                            self.pos -= 1;
                            Err(self.err("`)`"))
                        }
                    };
                }
                if let Some(axis) = self.chart.iter().position(|&v| v == name) {
                    return Ok(ExprAst::Var(axis, name));
                }
                Err(ParseError {
                    offset,
                    expected: "a chart variable, function or `pi`",
                    found: format!("unknown identifier `{name}`"),
                })
            }
            _ => Err(self.err("an operand")),
        }
    }
}

/// Parses `text` over the given chart variable names.
pub fn parse(text: &str, chart: [&str; 3]) -> Result<ExprAst, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        chart,
    };
    let ast = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("end of input or an operator"));
    }
    Ok(ast)
}

/// Pretty-prints with minimal parentheses; `parse(print(ast))` is
/// structurally identical to `ast`.
pub fn print(ast: &ExprAst) -> String {
    fn child(node: &ExprAst, min_prec: u8) -> String {
        if node.precedence() < min_prec {
            format!("({})", print(node))
        } else {
            print(node)
        }
    }
    match ast {
        ExprAst::Num(v) => format!("{v}"),
        ExprAst::Pi => "pi".to_string(),
        ExprAst::Var(_, name) => name.clone(),
        ExprAst::Neg(a) => format!("-{}", child(a, 3)),
        ExprAst::Add(a, b) => format!("{} + {}", child(a, 1), child(b, 2)),
        ExprAst::Sub(a, b) => format!("{} - {}", child(a, 1), child(b, 2)),
        ExprAst::Mul(a, b) => format!("{}*{}", child(a, 2), child(b, 3)),
        ExprAst::Div(a, b) => format!("{}/{}", child(a, 2), child(b, 3)),
        ExprAst::Pow(a, b) => {
            let base = if a.is_atom() {
                print(a)
            } else {
                format!("({})", print(a))
            };
            // exponents re-parse as `exponent`: minus chains and atoms only
            let exp = match b.as_ref() {
                ExprAst::Neg(inner) if inner.is_atom() => format!("-{}", print(inner)),
                e if e.is_atom() => print(e),
                e => format!("({})", print(e)),
            };
            format!("{base}^{exp}")
        }
        ExprAst::Call(f, a) => format!("{}({})", f.name(), print(a)),
    }
}

/// Evaluation failure, reported with the offending subexpression.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalError {
    pub subexpr: String,
    pub what: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in `{}`", self.what, self.subexpr)
    }
}

impl std::error::Error for EvalError {}

impl From<EvalError> for FieldError {
    fn from(e: EvalError) -> Self {
        FieldError::Domain(e.to_string())
    }
}

fn fail(node: &ExprAst, what: String) -> EvalError {
    EvalError {
        subexpr: print(node),
        what,
    }
}

/// Plain value of a constant subtree (no variables).
fn const_value(node: &ExprAst) -> Result<f64, EvalError> {
    let jet = eval_jet2(node, [0.0, 0.0, 0.0])?;
    Ok(jet.value)
}

/// Evaluates the AST to a second-order jet at `point`.
pub fn eval_jet2(ast: &ExprAst, point: Point) -> Result<Jet2, EvalError> {
    match ast {
        ExprAst::Num(v) => Ok(Jet2::constant(*v)),
        ExprAst::Pi => Ok(Jet2::constant(std::f64::consts::PI)),
        ExprAst::Var(axis, _) => Ok(Jet2::variable(*axis, point[*axis])),
        ExprAst::Neg(a) => Ok(-eval_jet2(a, point)?),
        ExprAst::Add(a, b) => Ok(eval_jet2(a, point)? + eval_jet2(b, point)?),
        ExprAst::Sub(a, b) => Ok(eval_jet2(a, point)? - eval_jet2(b, point)?),
        ExprAst::Mul(a, b) => Ok(eval_jet2(a, point)? * eval_jet2(b, point)?),
        ExprAst::Div(a, b) => {
            let num = eval_jet2(a, point)?;
            let den = eval_jet2(b, point)?;
            if den.value == 0.0 {
                return Err(fail(ast, "division by zero".into()));
            }
            Ok(num / den)
        }
        ExprAst::Pow(base, exp) => {
            let e = const_value(exp)?;
            let b = eval_jet2(base, point)?;
            let as_int = e.round();
            if (e - as_int).abs() == 0.0 && as_int.abs() <= 1e6 {
                let n = as_int as i32;
                if n < 0 && b.value == 0.0 {
                    return Err(fail(ast, "zero raised to a negative power".into()));
                }
                Ok(b.powi(n))
            } else {
                if b.value <= 0.0 {
                    return Err(fail(
                        ast,
                        format!("non-integer power of a non-positive base ({})", b.value),
                    ));
                }
                Ok(b.powf(e))
            }
        }
        ExprAst::Call(f, a) => {
            let arg = eval_jet2(a, point)?;
            let v = arg.value;
            let out = match f {
                Func::Sin => arg.sin(),
                Func::Cos => arg.cos(),
                Func::Tan => arg.tan(),
                Func::Asin | Func::Acos => {
                    if v.abs() >= 1.0 {
                        return Err(fail(
                            ast,
                            format!("inverse trigonometric argument out of (-1, 1) ({v})"),
                        ));
                    }
                    if *f == Func::Asin {
                        arg.asin()
                    } else {
                        arg.acos()
                    }
                }
                Func::Atan => arg.atan(),
                Func::Sinh => arg.sinh(),
                Func::Cosh => arg.cosh(),
                Func::Tanh => arg.tanh(),
                Func::Exp => arg.exp(),
                Func::Ln => {
                    if v <= 0.0 {
                        return Err(fail(ast, format!("ln of non-positive argument ({v})")));
                    }
                    arg.ln()
                }
                Func::Sqrt => {
                    if v <= 0.0 {
                        return Err(fail(ast, format!("sqrt of non-positive argument ({v})")));
                    }
                    arg.sqrt()
                }
                Func::Abs => {
                    if v == 0.0 {
                        return Err(fail(ast, "abs is not differentiable at 0".into()));
                    }
                    arg.abs()
                }
            };
            if !out.is_finite() {
                return Err(fail(ast, "evaluation produced a non-finite jet".into()));
            }
            Ok(out)
        }
    }
}

/// Parses `text` on `chart` and wraps it as a [`ScalarField`].
pub fn field_from_text(text: &str, chart: [&'static str; 3]) -> Result<ScalarField, ParseError> {
    let ast = parse(text, chart)?;
    Ok(field_from_ast(&ast, chart))
}

/// Wraps a parsed AST as a [`ScalarField`] on `chart`.
pub fn field_from_ast(ast: &ExprAst, chart: [&'static str; 3]) -> ScalarField {
    let ast = ast.clone();
    ScalarField::new(chart, move |p| Ok(eval_jet2(&ast, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SplitMix64;

    const XYT: [&str; 3] = ["x", "y", "t"];

    #[test]
    fn parses_quadric_graph() {
        let ast = parse("t - 2*x*y", XYT).unwrap();
        let expected = ExprAst::Sub(
            Box::new(ExprAst::Var(2, "t".into())),
            Box::new(ExprAst::Mul(
                Box::new(ExprAst::Mul(
                    Box::new(ExprAst::Num(2.0)),
                    Box::new(ExprAst::Var(0, "x".into())),
                )),
                Box::new(ExprAst::Var(1, "y".into())),
            )),
        );
        assert_eq!(ast, expected);
    }

    #[test]
    fn parses_quartic_sphere() {
        // the unit sphere of the gauge norm
        let ast = parse("(x^2+y^2)^2 + t^2 - 1", XYT).unwrap();
        let j = eval_jet2(&ast, [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(j.value, 0.0);
    }

    #[test]
    fn incomplete_expression_reports_offset() {
        let e = parse("t - ", XYT).unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "an operand");
    }

    #[test]
    fn unknown_identifier_reports_offset() {
        let e = parse("t - lambda", XYT).unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.found.contains("lambda"));
    }

    #[test]
    fn nonconstant_exponent_rejected() {
        let e = parse("x^y", XYT).unwrap_err();
        assert_eq!(e.expected, "a constant exponent (no variables)");
        // constant arithmetic is fine
        parse("x^(1+1)", XYT).unwrap();
        parse("x^-2", XYT).unwrap();
        parse("2^2^3", XYT).unwrap();
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -x^2 is -(x^2)
        let ast = parse("-x^2", XYT).unwrap();
        let j = eval_jet2(&ast, [3.0, 0.0, 0.0]).unwrap();
        assert_eq!(j.value, -9.0);
        // ^ is right-associative: 2^3^2 = 2^9
        let ast = parse("2^3^2", XYT).unwrap();
        assert_eq!(eval_jet2(&ast, [0.0; 3]).unwrap().value, 512.0);
        // unary minus below */: -2*3 = -6, 2*-3 parses via unary
        let ast = parse("2*-3", XYT).unwrap();
        assert_eq!(eval_jet2(&ast, [0.0; 3]).unwrap().value, -6.0);
    }

    #[test]
    fn quadric_jet_values() {
        let ast = parse("t - 2*x*y", XYT).unwrap();
        let j = eval_jet2(&ast, [1.0, 1.0, 2.0]).unwrap();
        assert_eq!(j.value, 0.0);
        assert_eq!(j.grad, [-2.0, -2.0, 1.0]);
        assert_eq!(j.hess(0, 1), -2.0);
        for (i, k) in [(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)] {
            assert_eq!(j.hess(i, k), 0.0);
        }
    }

    #[test]
    fn pythagorean_identity_jet() {
        let ast = parse("sin(x)^2 + cos(x)^2", XYT).unwrap();
        let j = eval_jet2(&ast, [0.7, 0.0, 0.0]).unwrap();
        assert!((j.value - 1.0).abs() < 1e-15);
        assert!(j.grad.iter().all(|g| g.abs() < 1e-15));
    }

    #[test]
    fn domain_errors_name_subexpression() {
        let ast = parse("ln(y)", XYT).unwrap();
        let e = eval_jet2(&ast, [0.0, -1.0, 0.0]).unwrap_err();
        assert_eq!(e.subexpr, "ln(y)");
        assert!(e.what.contains("non-positive"));

        let ast = parse("sqrt(x - 2)", XYT).unwrap();
        assert!(eval_jet2(&ast, [1.0, 0.0, 0.0]).is_err());

        let ast = parse("abs(x)", XYT).unwrap();
        assert!(eval_jet2(&ast, [0.0; 3]).is_err());
        assert!(eval_jet2(&ast, [-0.5, 0.0, 0.0]).is_ok());

        let ast = parse("1/(x - 1)", XYT).unwrap();
        assert!(eval_jet2(&ast, [1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn print_round_trips_handwritten() {
        for text in [
            "t - 2*x*y",
            "(x^2+y^2)^2 + t^2 - 1",
            "-x^2 + 3*(y - t)/(x + 1)",
            "sin(x)*cos(y)^2 - tanh(t)",
            "x^-2 + 2^0.5",
            "pi*x - abs(y)",
        ] {
            let ast = parse(text, XYT).unwrap();
            let printed = print(&ast);
            let reparsed = parse(&printed, XYT).unwrap();
            assert_eq!(
                ast, reparsed,
                "round trip failed for `{text}` -> `{printed}`"
            );
        }
    }

    // --- randomized generator used for the FD oracle and round-trip checks ---

    fn random_ast(rng: &mut SplitMix64, depth: usize) -> ExprAst {
        if depth == 0 {
            return match rng.next_u64() % 4 {
                0 => ExprAst::Num((rng.uniform(0.0, 3.0) * 8.0).round() / 8.0),
                1 => ExprAst::Var(0, "x".into()),
                2 => ExprAst::Var(1, "y".into()),
                _ => ExprAst::Var(2, "t".into()),
            };
        }
        match rng.next_u64() % 10 {
            0 => ExprAst::Add(
                Box::new(random_ast(rng, depth - 1)),
                Box::new(random_ast(rng, depth - 1)),
            ),
            1 => ExprAst::Sub(
                Box::new(random_ast(rng, depth - 1)),
                Box::new(random_ast(rng, depth - 1)),
            ),
            2 | 3 => ExprAst::Mul(
                Box::new(random_ast(rng, depth - 1)),
                Box::new(random_ast(rng, depth - 1)),
            ),
            4 => ExprAst::Div(
                Box::new(random_ast(rng, depth - 1)),
                Box::new(random_ast(rng, depth - 1)),
            ),
            5 => ExprAst::Neg(Box::new(random_ast(rng, depth - 1))),
            6 => ExprAst::Pow(
                Box::new(random_ast(rng, depth - 1)),
                Box::new(ExprAst::Num((rng.next_u64() % 4) as f64)),
            ),
            _ => {
                let f = *rng.pick(&[
                    Func::Sin,
                    Func::Cos,
                    Func::Tan,
                    Func::Atan,
                    Func::Sinh,
                    Func::Cosh,
                    Func::Tanh,
                    Func::Exp,
                    Func::Ln,
                    Func::Sqrt,
                    Func::Abs,
                    Func::Asin,
                    Func::Acos,
                ]);
                ExprAst::Call(f, Box::new(random_ast(rng, depth - 1)))
            }
        }
    }

    /// Find a point where the AST evaluates to a well-conditioned jet.
    fn usable_point(ast: &ExprAst, rng: &mut SplitMix64) -> Option<Point> {
        for _ in 0..40 {
            let p = [
                rng.uniform(-1.2, 1.2),
                rng.uniform(-1.2, 1.2),
                rng.uniform(-1.2, 1.2),
            ];
            if let Ok(j) = eval_jet2(ast, p) {
                if j.is_finite() && j.max_abs() < 1e4 {
                    // keep clear of domain boundaries for the FD stencil
                    let mut ok = true;
                    for i in 0..3 {
                        for s in [-1.0, 1.0] {
                            let mut q = p;
                            q[i] += s * 2e-4;
                            match eval_jet2(ast, q) {
                                Ok(jq) if jq.is_finite() && jq.max_abs() < 1e5 => {}
                                _ => {
                                    ok = false;
                                }
                            }
                        }
                    }
                    if ok {
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    /// Gradient and Hessian against central finite differences of the value.
    #[test]
    fn jets_match_finite_differences_on_random_expressions() {
        let mut rng = SplitMix64::new(0xfeed);
        let mut done = 0;
        while done < 500 {
            let depth = 1 + (rng.next_u64() % 6) as usize;
            let ast = random_ast(&mut rng, depth);
            let Some(p) = usable_point(&ast, &mut rng) else {
                continue;
            };
            let jet = eval_jet2(&ast, p).unwrap();
            let value = |q: Point| eval_jet2(&ast, q).map(|j| j.value);
            let scale = 1.0 + jet.max_abs();

            // gradient: step 1e-5
            let hg = 1e-5;
            let mut ok = true;
            for i in 0..3 {
                let mut qp = p;
                let mut qm = p;
                qp[i] += hg;
                qm[i] -= hg;
                let (Ok(fp), Ok(fm)) = (value(qp), value(qm)) else {
                    ok = false;
                    break;
                };
                let fd = (fp - fm) / (2.0 * hg);
                if (fd - jet.grad[i]).abs() >= 1e-6 * scale {
                    panic!(
                        "gradient mismatch for `{}` at {:?}: axis {} fd {} vs {}",
                        print(&ast),
                        p,
                        i,
                        fd,
                        jet.grad[i]
                    );
                }
            }
            if !ok {
                continue;
            }
            // Hessian: second differences at steps h and 2h, Richardson
            // combined; points where the two estimates disagree badly have
            // unstable higher derivatives and are skipped.
            let h = 1e-4;
            let f0 = value(p).unwrap();
            let second = |i: usize, j: usize, h: f64| -> Option<f64> {
                if i == j {
                    let mut qp = p;
                    let mut qm = p;
                    qp[i] += h;
                    qm[i] -= h;
                    Some((value(qp).ok()? - 2.0 * f0 + value(qm).ok()?) / (h * h))
                } else {
                    let mut qpp = p;
                    let mut qpm = p;
                    let mut qmp = p;
                    let mut qmm = p;
                    qpp[i] += h;
                    qpp[j] += h;
                    qpm[i] += h;
                    qpm[j] -= h;
                    qmp[i] -= h;
                    qmp[j] += h;
                    qmm[i] -= h;
                    qmm[j] -= h;
                    Some(
                        (value(qpp).ok()? - value(qpm).ok()? - value(qmp).ok()?
                            + value(qmm).ok()?)
                            / (4.0 * h * h),
                    )
                }
            };
            for i in 0..3 {
                for j in i..3 {
                    let (Some(fd_h), Some(fd_2h)) = (second(i, j, h), second(i, j, 2.0 * h)) else {
                        ok = false;
                        break;
                    };
                    if (fd_h - fd_2h).abs() > 1e-3 * scale {
                        // fourth derivative too large for the stencil
                        ok = false;
                        break;
                    }
                    let fd = (4.0 * fd_h - fd_2h) / 3.0;
                    if (fd - jet.hess(i, j)).abs() >= 2e-6 * scale {
                        panic!(
                            "hessian mismatch for `{}` at {:?}: ({},{}) fd {} vs {}",
                            print(&ast),
                            p,
                            i,
                            j,
                            fd,
                            jet.hess(i, j)
                        );
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok {
                continue;
            }
            done += 1;
        }
    }

    #[test]
    fn parser_never_panics_on_garbage() {
        let mut rng = SplitMix64::new(0x9a9a);
        for _ in 0..2000 {
            let len = (rng.next_u64() % 24) as usize;
            let text: String = (0..len)
                .map(|_| {
                    let c = rng.next_u64();
                    match c % 14 {
                        0 => 'λ',
                        1 => '(',
                        2 => ')',
                        3 => '^',
                        4 => '-',
                        5 => '*',
                        6 => '.',
                        7 => 'x',
                        8 => '1',
                        9 => ' ',
                        10 => 'e',
                        11 => '+',
                        12 => '/',
                        _ => 'π',
                    }
                })
                .collect();
            let _ = parse(&text, XYT); // must not panic
        }
        // multibyte input reports the offending character
        let e = parse("x + λ", XYT).unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.found.contains('λ'));
    }

    #[test]
    fn print_round_trips_random_expressions() {
        let mut rng = SplitMix64::new(0xabcd);
        for _ in 0..500 {
            let depth = 1 + (rng.next_u64() % 6) as usize;
            let ast = random_ast(&mut rng, depth);
            let printed = print(&ast);
            let reparsed = parse(&printed, XYT)
                .unwrap_or_else(|e| panic!("reparse of `{printed}` failed: {e}"));
            assert_eq!(ast, reparsed, "round trip failed: `{printed}`");
        }
    }
}
