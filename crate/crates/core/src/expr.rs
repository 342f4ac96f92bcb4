//! Rational expressions over non-commuting variables `x1..xm` and their
//! adjoints.
//!
//! An [`Expression`] is purely syntactic: two expressions that represent the
//! same rational function (for example `(x1*x2)^-1` and `x2^-1*x1^-1`) are
//! different trees. Equality of the represented functions is decided
//! probabilistically in [`crate::idtest`].

use std::fmt;
use std::ops;

use num_complex::Complex64;

/// Abstract syntax tree of a non-commutative rational expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    ScalarLiteral(Complex64),
    /// `x_i`, with `i >= 1`.
    Variable(usize),
    /// `x_i'`, the adjoint of `x_i`.
    AdjointVariable(usize),
    Sum(Box<Expression>, Box<Expression>),
    Difference(Box<Expression>, Box<Expression>),
    Product(Box<Expression>, Box<Expression>),
    Negation(Box<Expression>),
    Inverse(Box<Expression>),
}

/// A formal letter of the free algebra: `x_i` or `x_i'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub adjoint: bool,
}

impl Letter {
    pub fn new(index: usize, adjoint: bool) -> Self {
        Letter { index, adjoint }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.adjoint {
            write!(f, "x{}'", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// Which variables an expression mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableInventory {
    /// Highest variable index used (0 for constant expressions).
    pub num_variables: usize,
    /// `uses_adjoint[i - 1]` is set when `x_i'` occurs.
    pub uses_adjoint: Vec<bool>,
}

impl VariableInventory {
    pub fn adjoint_used(&self, index: usize) -> bool {
        index >= 1 && self.uses_adjoint.get(index - 1).copied().unwrap_or(false)
    }
}

impl Expression {
    pub fn scalar(value: Complex64) -> Self {
        Expression::ScalarLiteral(value)
    }

    pub fn real(value: f64) -> Self {
        Expression::ScalarLiteral(Complex64::new(value, 0.0))
    }

    /// `x_index`. Panics on index 0.
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Expression::Variable(index)
    }

    /// `x_index'`. Panics on index 0.
    pub fn adj(index: usize) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Expression::AdjointVariable(index)
    }

    pub fn inv(self) -> Self {
        Expression::Inverse(Box::new(self))
    }

    /// Nesting depth of inverses: the least `k` such that the expression is
    /// built from polynomials by `k` rounds of formal inversion.
    pub fn level(&self) -> usize {
        match self {
            Expression::ScalarLiteral(_)
            | Expression::Variable(_)
            | Expression::AdjointVariable(_) => 0,
            Expression::Sum(a, b) | Expression::Difference(a, b) | Expression::Product(a, b) => {
                a.level().max(b.level())
            }
            Expression::Negation(a) => a.level(),
            Expression::Inverse(a) => a.level() + 1,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.level() == 0
    }

    pub fn inventory(&self) -> VariableInventory {
        let mut inv = VariableInventory { num_variables: 0, uses_adjoint: Vec::new() };
        self.visit_letters(&mut |letter| {
            if letter.index > inv.num_variables {
                inv.num_variables = letter.index;
                inv.uses_adjoint.resize(letter.index, false);
            }
            if letter.adjoint {
                inv.uses_adjoint[letter.index - 1] = true;
            }
        });
        inv
    }

    fn visit_letters(&self, f: &mut impl FnMut(Letter)) {
        match self {
            Expression::ScalarLiteral(_) => {}
            Expression::Variable(i) => f(Letter::new(*i, false)),
            Expression::AdjointVariable(i) => f(Letter::new(*i, true)),
            Expression::Sum(a, b) | Expression::Difference(a, b) | Expression::Product(a, b) => {
                a.visit_letters(f);
                b.visit_letters(f);
            }
            Expression::Negation(a) | Expression::Inverse(a) => a.visit_letters(f),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expression::ScalarLiteral(_)
            | Expression::Variable(_)
            | Expression::AdjointVariable(_) => 1,
            Expression::Sum(a, b) | Expression::Difference(a, b) | Expression::Product(a, b) => {
                1 + a.size() + b.size()
            }
            Expression::Negation(a) | Expression::Inverse(a) => 1 + a.size(),
        }
    }

    /// Every subterm, in post-order, left to right. The last element is `self`.
    pub fn subterms(&self) -> Vec<&Expression> {
        fn walk<'a>(e: &'a Expression, out: &mut Vec<&'a Expression>) {
            match e {
                Expression::Sum(a, b) | Expression::Difference(a, b) | Expression::Product(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expression::Negation(a) | Expression::Inverse(a) => walk(a, out),
                _ => {}
            }
            out.push(e);
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Text in the parser grammar; `parse(e.pretty_print())` reproduces `e`
    /// whenever `e` is in the image of the parser (scalar literals that are
    /// non-negative reals or positive imaginaries).
    pub fn pretty_print(&self) -> String {
        let mut out = String::new();
        write_expr(self, Prec::Sum, &mut out);
        out
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty_print())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Product,
    Unary,
    Postfix,
}

fn precedence(e: &Expression) -> Prec {
    match e {
        Expression::Sum(..) | Expression::Difference(..) => Prec::Sum,
        Expression::Product(..) => Prec::Product,
        Expression::Negation(_) => Prec::Unary,
        Expression::ScalarLiteral(c) if needs_arithmetic(*c) => Prec::Sum,
        Expression::ScalarLiteral(c) if c.re.is_sign_negative() && c.im == 0.0 => Prec::Unary,
        _ => Prec::Postfix,
    }
}

fn needs_arithmetic(c: Complex64) -> bool {
    c.re != 0.0 && c.im != 0.0
}

fn write_expr(e: &Expression, ctx: Prec, out: &mut String) {
    if precedence(e) < ctx {
        out.push('(');
        write_expr(e, Prec::Sum, out);
        out.push(')');
        return;
    }
    match e {
        Expression::ScalarLiteral(c) => write_scalar(*c, out),
        Expression::Variable(i) => {
            out.push('x');
            out.push_str(&i.to_string());
        }
        Expression::AdjointVariable(i) => {
            out.push('x');
            out.push_str(&i.to_string());
            out.push('\'');
        }
        Expression::Sum(a, b) => {
            write_expr(a, Prec::Sum, out);
            out.push_str(" + ");
            write_expr(b, Prec::Product, out);
        }
        Expression::Difference(a, b) => {
            write_expr(a, Prec::Sum, out);
            out.push_str(" - ");
            write_expr(b, Prec::Product, out);
        }
        Expression::Product(a, b) => {
            write_expr(a, Prec::Product, out);
            out.push_str(" * ");
            write_expr(b, Prec::Unary, out);
        }
        Expression::Negation(a) => {
            out.push('-');
            write_expr(a, Prec::Unary, out);
        }
        Expression::Inverse(a) => {
            write_expr(a, Prec::Postfix, out);
            out.push_str("^-1");
        }
    }
}

fn write_real(x: f64, out: &mut String) {
    // Display for f64 is the shortest round-tripping decimal and never uses
    // an exponent.
    out.push_str(&format!("{}", x.abs()));
}

fn write_scalar(c: Complex64, out: &mut String) {
    if needs_arithmetic(c) {
        if c.re < 0.0 {
            out.push('-');
        }
        write_real(c.re, out);
        out.push_str(if c.im < 0.0 { " - " } else { " + " });
        write_real(c.im, out);
        out.push('i');
    } else if c.im != 0.0 {
        if c.im < 0.0 {
            out.push('-');
        }
        write_real(c.im, out);
        out.push('i');
    } else {
        if c.re.is_sign_negative() {
            out.push('-');
        }
        write_real(c.re, out);
    }
}

impl ops::Add for Expression {
    type Output = Expression;
    fn add(self, rhs: Expression) -> Expression {
        Expression::Sum(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expression {
    type Output = Expression;
    fn sub(self, rhs: Expression) -> Expression {
        Expression::Difference(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expression {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        Expression::Product(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression::Negation(Box::new(self))
    }
}
