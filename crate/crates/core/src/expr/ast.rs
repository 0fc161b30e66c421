use std::fmt;

use crate::rational::Rational;

/// 1-based source position.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Sequence functions callable from expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqName {
    /// Fibonacci
    F,
    /// Lucas
    L,
    /// Pell
    P,
    /// Pell-Lucas
    Q,
    /// `U(a, b, r, n)`
    U,
}

impl SeqName {
    pub fn from_ident(name: &str) -> Option<Self> {
        match name {
            "F" => Some(SeqName::F),
            "L" => Some(SeqName::L),
            "P" => Some(SeqName::P),
            "Q" => Some(SeqName::Q),
            "U" => Some(SeqName::U),
            _ => None,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SeqName::U => 4,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SeqName::F => "F",
            SeqName::L => "L",
            SeqName::P => "P",
            SeqName::Q => "Q",
            SeqName::U => "U",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Always non-negative when produced by the parser.
    Number(Rational),
    Var(String),
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Neg(Box<Expr>),
    Seq { name: SeqName, args: Vec<Expr> },
    Sum { var: String, lower: Box<Expr>, upper: Box<Expr>, body: Box<Expr> },
}

/// An expression node. Equality compares structure only, not positions.
#[derive(Debug, Clone, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Self { kind, pos: Pos::default() }
    }

    pub fn at(kind: ExprKind, pos: Pos) -> Self {
        Self { kind, pos }
    }

    pub fn number(value: impl Into<Rational>) -> Self {
        Self::new(ExprKind::Number(value.into()))
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::new(ExprKind::Var(name.into()))
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        Self::new(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) })
    }

    pub fn negate(child: Expr) -> Self {
        Self::new(ExprKind::Neg(Box::new(child)))
    }

    pub fn seq(name: SeqName, args: Vec<Expr>) -> Self {
        Self::new(ExprKind::Seq { name, args })
    }

    pub fn sum(var: impl Into<String>, lower: Expr, upper: Expr, body: Expr) -> Self {
        Self::new(ExprKind::Sum {
            var: var.into(),
            lower: Box::new(lower),
            upper: Box::new(upper),
            body: Box::new(body),
        })
    }

    /// Binding strength used by the printer: sums/terms 1, products 2,
    /// unary minus 3, powers 4, atoms 5.
    fn level(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary { op: BinOp::Add | BinOp::Sub, .. } => 1,
            ExprKind::Binary { op: BinOp::Mul | BinOp::Div, .. } => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Binary { op: BinOp::Pow, .. } => 4,
            ExprKind::Number(v) if v.is_negative() => 3,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            write!(f, "(")?;
            self.fmt_bare(f)?;
            write!(f, ")")
        } else {
            self.fmt_bare(f)
        }
    }

    fn fmt_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Number(v) => write!(f, "{v}"),
            ExprKind::Var(name) => write!(f, "{name}"),
            ExprKind::Neg(child) => {
                write!(f, "-")?;
                child.fmt_at(f, 3)
            }
            ExprKind::Binary { op: BinOp::Pow, lhs, rhs } => {
                // A fractional literal base would read as `p/(q^e)`.
                let base_level = match &lhs.kind {
                    ExprKind::Number(v) if !v.is_integer() => 6,
                    _ => 5,
                };
                lhs.fmt_at(f, base_level)?;
                write!(f, "^")?;
                rhs.fmt_at(f, 3)
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let level = self.level();
                lhs.fmt_at(f, level)?;
                write!(f, " {} ", op.symbol())?;
                rhs.fmt_at(f, level + 1)
            }
            ExprKind::Seq { name, args } => {
                write!(f, "{}(", name.as_str())?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    arg.fmt_at(f, 0)?;
                }
                write!(f, ")")
            }
            ExprKind::Sum { var, lower, upper, body } => {
                write!(f, "sum({var}=")?;
                lower.fmt_at(f, 0)?;
                write!(f, "..")?;
                upper.fmt_at(f, 0)?;
                write!(f, ", ")?;
                body.fmt_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

/// Prints source that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
