//! Evaluate surface expressions against a named-field registry.

use crate::parser::Expr;
use voa_core::registry::Registry;
use voa_core::scalar::Scalar;
use voa_core::state::{LambdaPolynomial, State};

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Scalar),
    State(State),
    Lambda(LambdaPolynomial),
}

pub fn eval(expr: &Expr, reg: &Registry) -> Result<Value, String> {
    match expr {
        Expr::Name(n) => reg.resolve(n).map(Value::State).map_err(|e| e.to_string()),
        Expr::Int(v) => Ok(Value::Scalar(Scalar::from_int(*v))),
        Expr::Sym(s) => reg
            .algebra
            .context
            .lookup(s)
            .map(Value::Scalar)
            .map_err(|e| e.to_string()),
        Expr::Neg(a) => match eval(a, reg)? {
            Value::Scalar(x) => Ok(Value::Scalar(x.neg())),
            Value::State(x) => Ok(Value::State(x.neg())),
            Value::Lambda(x) => Ok(Value::Lambda(x.scale_int(-1))),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sign = matches!(expr, Expr::Add(..));
            match (eval(a, reg)?, eval(b, reg)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(if sign {
                    x.add(&y)
                } else {
                    x.sub(&y)
                })),
                (Value::State(x), Value::State(y)) => Ok(Value::State(if sign {
                    x.add(&y)
                } else {
                    x.sub(&y)
                })),
                _ => Err("cannot add a scalar to a state".to_string()),
            }
        }
        Expr::Mul(a, b) => match (eval(a, reg)?, eval(b, reg)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.mul(&y))),
            (Value::Scalar(x), Value::State(y)) | (Value::State(y), Value::Scalar(x)) => {
                Ok(Value::State(y.scale(&x)))
            }
            _ => Err("`*` multiplies scalars; use no(a, b) for states".to_string()),
        },
        Expr::Div(a, b) => match (eval(a, reg)?, eval(b, reg)?) {
            (Value::Scalar(x), Value::Scalar(y)) => {
                x.div(&y).map(Value::Scalar).map_err(|e| e.to_string())
            }
            (Value::State(x), Value::Scalar(y)) => y
                .inv()
                .map(|inv| Value::State(x.scale(&inv)))
                .map_err(|e| e.to_string()),
            _ => Err("`/` divides by scalars".to_string()),
        },
        Expr::Pow(a, n) => match eval(a, reg)? {
            Value::Scalar(x) => x.pow(*n).map(Value::Scalar).map_err(|e| e.to_string()),
            _ => Err("`^` only powers scalars".to_string()),
        },
        Expr::Der(a, m) => match eval(a, reg)? {
            Value::State(mut x) => {
                for _ in 0..*m {
                    x = reg.algebra.derivative(&x);
                }
                Ok(Value::State(x))
            }
            _ => Err("D(...) differentiates states".to_string()),
        },
        Expr::Nop(a, b) => match (eval(a, reg)?, eval(b, reg)?) {
            (Value::State(x), Value::State(y)) => reg
                .algebra
                .nop(&x, &y)
                .map(Value::State)
                .map_err(|e| e.to_string()),
            _ => Err("no(a, b) takes two states".to_string()),
        },
        Expr::Prod(a, b, n) => match (eval(a, reg)?, eval(b, reg)?) {
            (Value::State(x), Value::State(y)) => reg
                .algebra
                .nth_product(&x, &y, *n)
                .map(Value::State)
                .map_err(|e| e.to_string()),
            _ => Err("prod(a, b, n) takes two states".to_string()),
        },
        Expr::Bra(a, b) => match (eval(a, reg)?, eval(b, reg)?) {
            (Value::State(x), Value::State(y)) => reg
                .algebra
                .bracket(&x, &y)
                .map(Value::Lambda)
                .map_err(|e| e.to_string()),
            _ => Err("bra(a, b) takes two states".to_string()),
        },
        Expr::Colon(letters) => {
            // right-nested normally ordered product of the letters
            let mut acc: Option<State> = None;
            for (name, d) in letters.iter().rev() {
                let mut s = reg.resolve(name).map_err(|e| e.to_string())?;
                for _ in 0..*d {
                    s = reg.algebra.derivative(&s);
                }
                acc = Some(match acc {
                    None => s,
                    Some(rest) => reg.algebra.nop(&s, &rest).map_err(|e| e.to_string())?,
                });
            }
            acc.map(Value::State)
                .ok_or_else(|| "empty monomial".to_string())
        }
    }
}
