//! A small language of multiplicative words and constraints between them.
//!
//! Defining systems (`awx^2=x`, `(awx)*=awx`, `x <=H d`, ...) are data, so
//! the matrix certifier and the finite-ring oracle evaluate exactly the same
//! statements.
//!
//! Grammar: a word is a juxtaposition of factors; a factor is a lowercase
//! letter, `1`, `0` or a parenthesised word, followed by any number of
//! postfix `*` and `^k` (also `^{k}`). Words are normalised to a flat list
//! of possibly starred letters, so `(ab)*` becomes `b* a*`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: char,
    pub starred: bool,
}

/// A normalised word: the zero element or a product of letters (the empty
/// product is the identity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Zero,
    Product(Vec<Letter>),
}

impl Word {
    pub fn one() -> Word {
        Word::Product(Vec::new())
    }

    pub fn letter(symbol: char) -> Word {
        Word::Product(vec![Letter {
            symbol,
            starred: false,
        }])
    }

    pub fn parse(src: &str) -> Result<Word> {
        let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let w = p.product()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected `{}` in `{src}`", p.chars[p.pos])));
        }
        Ok(w)
    }

    pub fn star(&self) -> Word {
        match self {
            Word::Zero => Word::Zero,
            Word::Product(ls) => Word::Product(
                ls.iter()
                    .rev()
                    .map(|l| Letter {
                        symbol: l.symbol,
                        starred: !l.starred,
                    })
                    .collect(),
            ),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        match (self, other) {
            (Word::Product(x), Word::Product(y)) => {
                Word::Product(x.iter().chain(y).copied().collect())
            }
            _ => Word::Zero,
        }
    }

    pub fn pow(&self, k: usize) -> Word {
        (0..k).fold(Word::one(), |acc, _| acc.mul(self))
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            Word::Zero => &[],
            Word::Product(ls) => ls,
        }
    }

    pub fn mentions(&self, symbol: char) -> bool {
        self.letters().iter().any(|l| l.symbol == symbol)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Zero => write!(f, "0"),
            Word::Product(ls) if ls.is_empty() => write!(f, "1"),
            Word::Product(ls) => {
                for l in ls {
                    write!(f, "{}", l.symbol)?;
                    if l.starred {
                        write!(f, "*")?;
                    }
                }
                Ok(())
            }
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word> {
        let mut acc = Word::one();
        let mut empty = true;
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
            empty = false;
        }
        if empty {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word> {
        let c = self.peek().expect("caller checked");
        self.pos += 1;
        let mut w = match c {
            '0' => Word::Zero,
            '1' => Word::one(),
            '(' => {
                let inner = self.product()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                inner
            }
            c if c.is_ascii_lowercase() => Word::letter(c),
            c => return Err(Error::Parse(format!("unexpected `{c}`"))),
        };
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    w = w.star();
                }
                Some('^') => {
                    self.pos += 1;
                    let braced = self.peek() == Some('{');
                    if braced {
                        self.pos += 1;
                    }
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    let digits: String = self.chars[start..self.pos].iter().collect();
                    let k: usize = digits
                        .parse()
                        .map_err(|_| Error::Parse("exponent must be a number".into()))?;
                    if braced {
                        if self.peek() != Some('}') {
                            return Err(Error::Parse("unbalanced brace".into()));
                        }
                        self.pos += 1;
                    }
                    w = w.pow(k);
                }
                _ => break,
            }
        }
        Ok(w)
    }
}

/// Green's preorders: `a <=L b` iff `a = xb`, `a <=R b` iff `a = by`,
/// `a <=H b` iff both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Green {
    L,
    R,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Eq(Word, Word),
    NotEq(Word, Word),
    Leq(Green, Word, Word),
    Equiv(Green, Word, Word),
}

impl Constraint {
    pub fn parse(src: &str) -> Result<Constraint> {
        let green = |s: &str| match s {
            "L" => Some(Green::L),
            "R" => Some(Green::R),
            "H" => Some(Green::H),
            _ => None,
        };
        let split = |op: &str| -> Option<(&str, &str)> { src.split_once(op) };
        if let Some((l, r)) = split("!=") {
            return Ok(Constraint::NotEq(Word::parse(l)?, Word::parse(r)?));
        }
        if let Some((l, r)) = split("<=") {
            let r = r.trim_start();
            let g = r.get(..1).and_then(green).ok_or_else(|| {
                Error::Parse(format!("expected L, R or H after `<=` in `{src}`"))
            })?;
            return Ok(Constraint::Leq(g, Word::parse(l)?, Word::parse(&r[1..])?));
        }
        if let Some((l, r)) = split("~") {
            let r = r.trim_start();
            let g = r.get(..1).and_then(green).ok_or_else(|| {
                Error::Parse(format!("expected L, R or H after `~` in `{src}`"))
            })?;
            return Ok(Constraint::Equiv(g, Word::parse(l)?, Word::parse(&r[1..])?));
        }
        if let Some((l, r)) = split("=") {
            return Ok(Constraint::Eq(Word::parse(l)?, Word::parse(r)?));
        }
        Err(Error::Parse(format!("no relation in `{src}`")))
    }

    pub fn words(&self) -> (&Word, &Word) {
        match self {
            Constraint::Eq(l, r)
            | Constraint::NotEq(l, r)
            | Constraint::Leq(_, l, r)
            | Constraint::Equiv(_, l, r) => (l, r),
        }
    }

    pub fn mentions(&self, symbol: char) -> bool {
        let (l, r) = self.words();
        l.mentions(symbol) || r.mentions(symbol)
    }
}

/// A named list of constraints, each kept with its source text for labels.
#[derive(Debug, Clone)]
pub struct System {
    pub name: String,
    pub constraints: Vec<(String, Constraint)>,
}

impl System {
    pub fn parse<S: AsRef<str>>(name: &str, lines: &[S]) -> Result<System> {
        let constraints = lines
            .iter()
            .map(|s| {
                let s = s.as_ref();
                Ok((s.to_string(), Constraint::parse(s)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(System {
            name: name.to_string(),
            constraints,
        })
    }
}

/// Defining systems. The unknown is always `x`.
pub mod systems {
    pub const INNER: &[&str] = &["axa=a"];
    pub const ONE_THREE: &[&str] = &["axa=a", "(ax)*=ax"];
    pub const ONE_FOUR: &[&str] = &["axa=a", "(xa)*=xa"];
    pub const PENROSE: &[&str] = &["axa=a", "xax=x", "(ax)*=ax", "(xa)*=xa"];
    pub const GROUP: &[&str] = &["axa=a", "xax=x", "ax=xa"];
    pub const CORE: &[&str] = &["ax^2=x", "xa^2=a", "(ax)*=ax"];
    pub const CORE_FIVE: &[&str] = &["axa=a", "xax=x", "(ax)*=ax", "xa^2=a", "ax^2=x"];
    pub const DUAL_CORE: &[&str] = &["x^2a=x", "a^2x=a", "(xa)*=xa"];
    pub const DUAL_CORE_FIVE: &[&str] = &["axa=a", "xax=x", "(xa)*=xa", "a^2x=a", "x^2a=x"];
    pub const ALONG: &[&str] = &["xad=d", "dax=d", "x<=Hd"];
    pub const BC: &[&str] = &["xax=x", "xab=b", "cax=c", "x~Rb", "x~Lc"];
    pub const W_CORE: &[&str] = &["awx^2=x", "xawa=a", "(awx)*=awx"];
    pub const W_CORE_DERIVED: &[&str] = &["awxa=a", "xawx=x", "wxawx=wx"];
    pub const DUAL_V_CORE: &[&str] = &["x^2va=x", "avax=a", "(xva)*=xva"];
    pub const DUAL_V_CORE_DERIVED: &[&str] = &["axva=a", "xvax=x", "xvaxv=xv"];

    pub fn drazin(k: usize) -> Vec<String> {
        vec![
            "ax=xa".into(),
            "xax=x".into(),
            format!("a^{{{k}}}=a^{{{}}}x", k + 1),
        ]
    }

    pub fn core_ep(m: usize) -> Vec<String> {
        vec![
            format!("xa^{{{}}}=a^{{{m}}}", m + 1),
            "ax^2=x".into(),
            "(ax)*=ax".into(),
        ]
    }

    /// The index is minimal iff the solution fails the system one step down.
    pub fn core_ep_minimality(m: usize) -> Option<String> {
        (m > 1).then(|| format!("xa^{{{m}}}!=a^{{{}}}", m - 1))
    }

    pub fn drazin_minimality(k: usize) -> Option<String> {
        (k > 1).then(|| format!("a^{{{}}}!=a^{{{k}}}x", k - 1))
    }
}

/// A *-monoid in which words can be evaluated.
pub trait StarAlgebra {
    type Elem: Clone;
    fn one(&self) -> Result<Self::Elem>;
    fn zero(&self) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
}

pub fn eval<'e, A: StarAlgebra>(
    alg: &A,
    word: &Word,
    lookup: impl Fn(char) -> Option<&'e A::Elem>,
) -> Result<A::Elem>
where
    A::Elem: 'e,
{
    let letters = match word {
        Word::Zero => return alg.zero(),
        Word::Product(ls) if ls.is_empty() => return alg.one(),
        Word::Product(ls) => ls,
    };
    let mut acc: Option<A::Elem> = None;
    for l in letters {
        let base = lookup(l.symbol)
            .ok_or_else(|| Error::Parse(format!("unbound symbol `{}`", l.symbol)))?;
        let v = if l.starred { alg.star(base) } else { base.clone() };
        acc = Some(match acc {
            None => v,
            Some(a) => alg.mul(&a, &v)?,
        });
    }
    Ok(acc.expect("nonempty word"))
}
