//! A small exact expression language over rationals with sequence calls
//! `F(n)`, `L(n)`, `P(n)`, `Q(n)`, `U(a, b, r, n)` and inclusive sums
//! `sum(i=lo..hi, body)`.

mod ast;
mod eval;
mod parser;

pub use ast::{BinOp, Expr, ExprKind, Pos, SeqName};
pub use eval::{
    check_equal, eval_source, evaluate, Binding, Comparison, Env, EvalError, EvalErrorKind, ExprError, Side,
    SideError,
};
pub use parser::{parse, ParseError};
