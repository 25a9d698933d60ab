//! Prefix expressions over completion points: `add(x, y)`, `neg(x)`,
//! `<op>(x, ...)`, `embed:<literal>`, named elements like `sqrt:2`, and bare
//! literals.

use std::sync::Arc;

use omega_core::syntax::split_top_level;
use omega_core::{Completed, ElementSyntax, OmegaError, Result};

const NAMED: [&str; 4] = ["sqrt", "sqrt-bisect", "padic-sqrt", "geom"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(String),
    Named { kind: String, arg: String },
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Op { symbol: String, args: Vec<Expr> },
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn expect_args(name: &str, args: Vec<Expr>, n: usize) -> Result<Vec<Expr>> {
    if args.len() != n {
        return Err(OmegaError::ArityMismatch {
            symbol: name.into(),
            expected: n,
            got: args.len(),
        });
    }
    Ok(args)
}

pub fn parse(text: &str) -> Result<Expr> {
    let text = text.trim();
    if text.is_empty() {
        return Err(OmegaError::Parse("empty expression".into()));
    }
    if let Some(open) = text.find('(') {
        let name = text[..open].trim();
        if is_identifier(name) {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| OmegaError::Parse(format!("missing `)` in `{text}`")))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                split_top_level(inner)?
                    .into_iter()
                    .map(parse)
                    .collect::<Result<Vec<_>>>()?
            };
            return Ok(match name {
                "add" => {
                    let mut args = expect_args(name, args, 2)?.into_iter();
                    let (a, b) = (args.next().expect("two"), args.next().expect("two"));
                    Expr::Add(Box::new(a), Box::new(b))
                }
                "neg" => Expr::Neg(Box::new(expect_args(name, args, 1)?.remove(0))),
                _ => Expr::Op {
                    symbol: name.into(),
                    args,
                },
            });
        }
    }
    if let Some(literal) = text.strip_prefix("embed:") {
        return Ok(Expr::Literal(literal.trim().into()));
    }
    if let Some((kind, arg)) = text.split_once(':') {
        if NAMED.contains(&kind) {
            return Ok(Expr::Named {
                kind: kind.into(),
                arg: arg.trim().into(),
            });
        }
        return Err(OmegaError::Parse(format!("unknown named element `{kind}`")));
    }
    Ok(Expr::Literal(text.into()))
}

pub fn eval<G: ElementSyntax>(group: &Arc<G>, expr: &Expr) -> Result<Completed<G>> {
    Ok(match expr {
        Expr::Literal(text) => Completed::embed(Arc::clone(group), group.parse_element(text)?),
        Expr::Named { kind, arg } => G::named_element(group, kind, arg)?.into(),
        Expr::Add(a, b) => eval(group, a)?.add(&eval(group, b)?),
        Expr::Neg(a) => eval(group, a)?.neg(),
        Expr::Op { symbol, args } => {
            let op = group
                .op(symbol)
                .ok_or_else(|| OmegaError::Parse(format!("{} has no operation `{symbol}`", group.name())))?;
            let xs = args.iter().map(|a| eval(group, a)).collect::<Result<Vec<_>>>()?;
            Completed::apply_op(op, &xs)?
        }
    })
}
