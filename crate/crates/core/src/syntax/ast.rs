//! Expression trees for min-plus expressions. Every leaf is an affine form;
//! `max` never appears (it is rewritten as `-min(-·)` at parse time).

use crate::linform::LinearForm;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lin(LinearForm),
    Min(Vec<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn min(children: Vec<Expr>) -> Expr {
        assert!(!children.is_empty(), "min needs at least one argument");
        Expr::Min(children)
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Sum(Box::new(a), Box::new(b))
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    /// Direct tree-walk evaluation; the independent oracle for the
    /// normal-form evaluator.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        match self {
            Expr::Lin(f) => f.eval(x),
            Expr::Min(children) => children
                .iter()
                .map(|c| c.eval(x))
                .min()
                .expect("min has at least one child"),
            Expr::Sum(a, b) => a.eval(x) + b.eval(x),
            Expr::Neg(a) => -a.eval(x),
        }
    }
}
