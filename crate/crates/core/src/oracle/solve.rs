//! Word systems compiled against a finite ring, and exhaustive solving.

use super::ring::{Elem, FiniteStarRing};
use crate::error::{Error, Result};
use crate::word::{Constraint, Green, System, Word};

/// Values for the symbols `a`..`z`.
#[derive(Debug, Clone, Copy)]
pub struct Bindings([Elem; 26]);

impl Bindings {
    pub fn new(ring: &FiniteStarRing) -> Bindings {
        Bindings([ring.zero(); 26])
    }

    pub fn of(ring: &FiniteStarRing, pairs: &[(char, Elem)]) -> Bindings {
        let mut b = Bindings::new(ring);
        for &(c, e) in pairs {
            b.set(c, e);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, symbol: char, value: Elem) {
        self.0[slot(symbol)] = value;
    }

    #[inline]
    pub fn get(&self, symbol: char) -> Elem {
        self.0[slot(symbol)]
    }
}

#[inline]
fn slot(symbol: char) -> usize {
    (symbol as u8 - b'a') as usize
}

#[derive(Debug, Clone)]
enum CompiledWord {
    Zero,
    Product(Vec<(u8, bool)>),
}

impl CompiledWord {
    fn new(word: &Word) -> Result<CompiledWord> {
        Ok(match word {
            Word::Zero => CompiledWord::Zero,
            Word::Product(ls) => CompiledWord::Product(
                ls.iter()
                    .map(|l| {
                        if l.symbol.is_ascii_lowercase() {
                            Ok((slot(l.symbol) as u8, l.starred))
                        } else {
                            Err(Error::Parse(format!("symbol `{}` is not a lowercase letter", l.symbol)))
                        }
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }

    #[inline]
    fn eval(&self, ring: &FiniteStarRing, env: &Bindings) -> Elem {
        match self {
            CompiledWord::Zero => ring.zero(),
            CompiledWord::Product(ls) => ls.iter().fold(ring.one(), |acc, &(s, starred)| {
                let v = env.0[s as usize];
                ring.mul(acc, if starred { ring.star(v) } else { v })
            }),
        }
    }
}

#[derive(Debug, Clone)]
enum CompiledConstraint {
    Eq(CompiledWord, CompiledWord),
    NotEq(CompiledWord, CompiledWord),
    Leq(Green, CompiledWord, CompiledWord),
    Equiv(Green, CompiledWord, CompiledWord),
}

fn leq(ring: &FiniteStarRing, g: Green, p: Elem, q: Elem) -> bool {
    match g {
        Green::L => ring.leq_l(p, q),
        Green::R => ring.leq_r(p, q),
        Green::H => ring.leq_l(p, q) && ring.leq_r(p, q),
    }
}

impl CompiledConstraint {
    fn holds(&self, ring: &FiniteStarRing, env: &Bindings) -> bool {
        match self {
            CompiledConstraint::Eq(l, r) => l.eval(ring, env) == r.eval(ring, env),
            CompiledConstraint::NotEq(l, r) => l.eval(ring, env) != r.eval(ring, env),
            CompiledConstraint::Leq(g, l, r) => leq(ring, *g, l.eval(ring, env), r.eval(ring, env)),
            CompiledConstraint::Equiv(g, l, r) => {
                let (p, q) = (l.eval(ring, env), r.eval(ring, env));
                leq(ring, *g, p, q) && leq(ring, *g, q, p)
            }
        }
    }
}

/// A constraint system ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    pub name: String,
    labels: Vec<String>,
    constraints: Vec<CompiledConstraint>,
}

impl CompiledSystem {
    pub fn new<S: AsRef<str>>(name: &str, lines: &[S]) -> Result<CompiledSystem> {
        let sys = System::parse(name, lines)?;
        let mut labels = Vec::new();
        let mut constraints = Vec::new();
        for (label, c) in &sys.constraints {
            labels.push(label.clone());
            constraints.push(match c {
                Constraint::Eq(l, r) => CompiledConstraint::Eq(CompiledWord::new(l)?, CompiledWord::new(r)?),
                Constraint::NotEq(l, r) => CompiledConstraint::NotEq(CompiledWord::new(l)?, CompiledWord::new(r)?),
                Constraint::Leq(g, l, r) => CompiledConstraint::Leq(*g, CompiledWord::new(l)?, CompiledWord::new(r)?),
                Constraint::Equiv(g, l, r) => {
                    CompiledConstraint::Equiv(*g, CompiledWord::new(l)?, CompiledWord::new(r)?)
                }
            });
        }
        Ok(CompiledSystem {
            name: sys.name,
            labels,
            constraints,
        })
    }

    pub fn holds(&self, ring: &FiniteStarRing, env: &Bindings) -> bool {
        self.constraints.iter().all(|c| c.holds(ring, env))
    }

    /// Label of the first constraint that fails.
    pub fn first_failure(&self, ring: &FiniteStarRing, env: &Bindings) -> Option<&str> {
        self.constraints
            .iter()
            .zip(&self.labels)
            .find(|(c, _)| !c.holds(ring, env))
            .map(|(_, l)| l.as_str())
    }

    /// Every value of `unknown` satisfying the system, in element order.
    pub fn solve(&self, ring: &FiniteStarRing, env: &Bindings, unknown: char) -> Vec<Elem> {
        let mut env = *env;
        ring.elements()
            .filter(|&x| {
                env.set(unknown, x);
                self.holds(ring, &env)
            })
            .collect()
    }

    /// The first solution, if any.
    pub fn solve_one(&self, ring: &FiniteStarRing, env: &Bindings, unknown: char) -> Option<Elem> {
        let mut env = *env;
        ring.elements().find(|&x| {
            env.set(unknown, x);
            self.holds(ring, &env)
        })
    }
}

/// Complete solution set for `x` with the given symbols bound.
pub fn solve_equations(
    ring: &FiniteStarRing,
    bound: &[(char, Elem)],
    system: &CompiledSystem,
) -> Vec<Elem> {
    system.solve(ring, &Bindings::of(ring, bound), 'x')
}
