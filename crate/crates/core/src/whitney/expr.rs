//! Expression trees over named variables with forward-mode derivatives.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ["-"] integer)?
//! atom   := number | variable | ("exp" | "sin" | "cos") "(" expr ")" | "(" expr ")"
//! ```

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Float;

use super::WhitneyError;

#[derive(Clone, Debug, PartialEq)]
enum Node<T> {
    Const(T),
    Var(usize),
    Add(Box<Node<T>>, Box<Node<T>>),
    Sub(Box<Node<T>>, Box<Node<T>>),
    Mul(Box<Node<T>>, Box<Node<T>>),
    Div(Box<Node<T>>, Box<Node<T>>),
    Neg(Box<Node<T>>),
    Powi(Box<Node<T>>, i32),
    Exp(Box<Node<T>>),
    Sin(Box<Node<T>>),
    Cos(Box<Node<T>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr<T> {
    root: Node<T>,
    vars: Vec<String>,
    src: String,
}

/// Value and one directional derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub v: T,
    pub d: T,
}

impl<T: Float> Dual<T> {
    fn constant(v: T) -> Self {
        Dual { v, d: T::zero() }
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        Dual { v: e, d: e * self.d }
    }

    fn sin(self) -> Self {
        Dual { v: self.v.sin(), d: self.v.cos() * self.d }
    }

    fn cos(self) -> Self {
        Dual { v: self.v.cos(), d: -self.v.sin() * self.d }
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dual::constant(T::one());
        }
        let nt = T::from(n).expect("small integer");
        Dual { v: self.v.powi(n), d: nt * self.v.powi(n - 1) * self.d }
    }
}

impl<T: Float> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl<T: Float> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl<T: Float> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl<T: Float> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}

impl<T: Float> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: -self.d }
    }
}

impl<T: Float> Node<T> {
    fn eval(&self, x: &[T]) -> T {
        match self {
            Node::Const(c) => *c,
            Node::Var(i) => x[*i],
            Node::Add(a, b) => a.eval(x) + b.eval(x),
            Node::Sub(a, b) => a.eval(x) - b.eval(x),
            Node::Mul(a, b) => a.eval(x) * b.eval(x),
            Node::Div(a, b) => a.eval(x) / b.eval(x),
            Node::Neg(a) => -a.eval(x),
            Node::Powi(a, n) => a.eval(x).powi(*n),
            Node::Exp(a) => a.eval(x).exp(),
            Node::Sin(a) => a.eval(x).sin(),
            Node::Cos(a) => a.eval(x).cos(),
        }
    }

    fn dual(&self, x: &[T], dir: usize) -> Dual<T> {
        match self {
            Node::Const(c) => Dual::constant(*c),
            Node::Var(i) => Dual { v: x[*i], d: if *i == dir { T::one() } else { T::zero() } },
            Node::Add(a, b) => a.dual(x, dir) + b.dual(x, dir),
            Node::Sub(a, b) => a.dual(x, dir) - b.dual(x, dir),
            Node::Mul(a, b) => a.dual(x, dir) * b.dual(x, dir),
            Node::Div(a, b) => a.dual(x, dir) / b.dual(x, dir),
            Node::Neg(a) => -a.dual(x, dir),
            Node::Powi(a, n) => a.dual(x, dir).powi(*n),
            Node::Exp(a) => a.dual(x, dir).exp(),
            Node::Sin(a) => a.dual(x, dir).sin(),
            Node::Cos(a) => a.dual(x, dir).cos(),
        }
    }
}

impl<T: Float> Expr<T> {
    /// Parses `src` over the variables `vars`; a variable's index is its position.
    pub fn parse(src: &str, vars: &[&str]) -> Result<Self, WhitneyError> {
        let mut p = Parser { src, pos: 0, vars };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(Expr { root, vars: vars.iter().map(|s| s.to_string()).collect(), src: src.to_string() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.root.eval(x)
    }

    /// Partial derivative along variable `dir`, by forward mode.
    pub fn derivative(&self, x: &[T], dir: usize) -> T {
        self.root.dual(x, dir).d
    }

    pub fn eval_dual(&self, x: &[T], dir: usize) -> Dual<T> {
        self.root.dual(x, dir)
    }
}

impl<T> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> WhitneyError {
        WhitneyError::Parse { src: self.src.to_string(), pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<T: Float>(&mut self) -> Result<Node<T>, WhitneyError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term<T: Float>(&mut self) -> Result<Node<T>, WhitneyError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary<T: Float>(&mut self) -> Result<Node<T>, WhitneyError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.skip_ws();
            let start = self.pos;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let n: i32 = self.src[start..self.pos].parse().map_err(|_| self.error("expected integer exponent"))?;
            return Ok(Node::Powi(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom<T: Float>(&mut self) -> Result<Node<T>, WhitneyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                let v: f64 = text.parse().map_err(|_| self.error("malformed number"))?;
                Ok(Node::Const(T::from(v).ok_or_else(|| self.error("number out of range"))?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let func = match name {
                    "exp" => Some(Node::Exp as fn(Box<Node<T>>) -> Node<T>),
                    "sin" => Some(Node::Sin as fn(Box<Node<T>>) -> Node<T>),
                    "cos" => Some(Node::Cos as fn(Box<Node<T>>) -> Node<T>),
                    _ => None,
                };
                if let Some(func) = func {
                    if !self.eat('(') {
                        return Err(self.error("expected '(' after function name"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    return Ok(func(Box::new(arg)));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Node::Var(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{name}'")))
                    }
                }
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_and_differentiates() {
        let e: Expr<f64> = Expr::parse("x^2 - 3*x*t + exp(-t*x)", &["x", "t"]).unwrap();
        let p = [0.5, 2.0];
        assert!((e.eval(&p) - (0.25 - 3.0 + (-1.0f64).exp())).abs() < 1e-15);
        let dx = 2.0 * 0.5 - 3.0 * 2.0 - 2.0 * (-1.0f64).exp();
        assert!((e.derivative(&p, 0) - dx).abs() < 1e-14);
        let dt = -3.0 * 0.5 - 0.5 * (-1.0f64).exp();
        assert!((e.derivative(&p, 1) - dt).abs() < 1e-14);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e: Expr<f64> = Expr::parse("-x^2 + 1/2*x", &["x"]).unwrap();
        assert_eq!(e.eval(&[2.0]), -4.0 + 1.0);
        let e: Expr<f64> = Expr::parse("x^-1", &["x"]).unwrap();
        assert_eq!(e.derivative(&[2.0], 0), -0.25);
    }

    #[test]
    fn trig_derivatives() {
        let e: Expr<f64> = Expr::parse("r*sin(x/r)", &["x", "r"]).unwrap();
        let (x, r) = (0.3, 0.125);
        assert!((e.derivative(&[x, r], 0) - (x / r).cos()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Expr::<f64>::parse("x +", &["x"]).is_err());
        assert!(Expr::<f64>::parse("y", &["x"]).is_err());
        assert!(Expr::<f64>::parse("sin x", &["x"]).is_err());
        assert!(Expr::<f64>::parse("x^1.5", &["x"]).is_err());
    }

    #[test]
    fn single_precision() {
        let e: Expr<f32> = Expr::parse("cos(x)", &["x"]).unwrap();
        assert!((e.derivative(&[0.5f32], 0) + 0.5f32.sin()).abs() < 1e-6);
    }
}
