//! A small language for naming groups.
//!
//! ```text
//! spec    := product
//! product := term { "x" term }
//! term    := atom | "(" atom ":" atom "@" INT ")" | "(" spec ")"
//! atom    := "C" INT | "D" INT | "Q" INT | "Ab(" INT {"," INT} ")"
//!          | "Jp(" INT "," INT ")" | "A" INT | "S" INT
//!          | "Perm(" INT ";" perm {"," perm} ")" | NAME
//! perm    := cycle { cycle }        cycle := "(" { INT } ")"
//! ```
//!
//! `D` and `Q` take the group order. `A`/`S` take a degree. `x` is a
//! keyword, products associate to the left, and whitespace is ignored
//! between tokens, so `S3xD10` and `S3 x D10` are the same spec.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{gcd, is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::families;
use crate::group::Group;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Abelian(Vec<usize>),
    Semidirect { m: usize, n: usize, r: u64 },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Degree and generators, each generator a list of cycles.
    Perm { degree: usize, gens: Vec<Vec<Vec<usize>>> },
    Alternating(usize),
    Symmetric(usize),
    JordanP { p: usize, m: usize },
    Named(String),
}

impl GroupSpec {
    pub fn product(l: GroupSpec, r: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(l), Box::new(r))
    }

    /// Canonical text; parsing it gives back the same spec.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Group order, when it follows from the parameters alone.
    pub fn static_order(&self) -> Option<u128> {
        use GroupSpec::*;
        Some(match self {
            Cyclic(n) | Dihedral(n) | Dicyclic(n) => *n as u128,
            Abelian(ds) => ds.iter().map(|&d| d as u128).product(),
            Semidirect { m, n, .. } => (*m as u128) * (*n as u128),
            Product(l, r) => l.static_order()?.checked_mul(r.static_order()?)?,
            JordanP { p, m } => (*p as u128).checked_pow(*m as u32 + 1)?,
            Symmetric(d) | Alternating(d) if *d <= 30 => {
                let f: u128 = (1..=*d as u128).product();
                if matches!(self, Alternating(_)) && *d >= 2 {
                    f / 2
                } else {
                    f
                }
            }
            _ => return None,
        })
    }

    /// Checks constructor preconditions without building anything.
    pub fn validate(&self) -> Result<()> {
        use GroupSpec::*;
        let sem = |parameter: String, message: &str| Error::Semantic {
            parameter,
            message: message.to_string(),
        };
        match self {
            Cyclic(n) if *n == 0 => Err(sem(format!("C{n}"), "order must be at least 1")),
            Dihedral(n) if *n < 4 || n % 2 != 0 => {
                Err(sem(format!("D{n}"), "dihedral order must be even and at least 4"))
            }
            Dicyclic(n) if *n < 8 || n % 4 != 0 => Err(sem(
                format!("Q{n}"),
                "dicyclic order must be a multiple of 4 and at least 8",
            )),
            Abelian(ds) => match ds.iter().find(|&&d| d < 2) {
                Some(d) => Err(sem(format!("Ab(…{d}…)"), "invariants must be at least 2")),
                None => Ok(()),
            },
            Semidirect { m, n, r } => {
                let param = format!("@ {r}");
                if *m == 0 || *n == 0 {
                    return Err(sem(format!("C{m} : C{n}"), "factor orders must be positive"));
                }
                let mm = *m as u64;
                if *m > 1 && (*r == 0 || *r >= mm) {
                    return Err(sem(param, "exponent must satisfy 1 <= r < m"));
                }
                if *m > 1 && gcd(*r, mm) != 1 {
                    return Err(sem(param, "exponent must be coprime to m"));
                }
                if pow_mod(*r, *n as u64, mm) != 1 % mm {
                    return Err(sem(param, "r^n must be 1 mod m"));
                }
                Ok(())
            }
            Product(l, r) => {
                l.validate()?;
                r.validate()
            }
            Perm { degree, gens } => {
                if *degree == 0 {
                    return Err(sem("Perm(0; …)".into(), "degree must be positive"));
                }
                for cycles in gens {
                    families::perm_from_cycles(*degree, cycles)
                        .map_err(|e| sem(format!("Perm({degree}; …)"), &e.to_string()))?;
                }
                Ok(())
            }
            Alternating(0) | Symmetric(0) => Err(sem(self.render(), "degree must be positive")),
            JordanP { p, m } => {
                if !is_prime(*p as u64) {
                    Err(sem(format!("Jp({p},{m})"), "p must be prime"))
                } else if *m < 2 || m > p {
                    Err(sem(format!("Jp({p},{m})"), "block size must satisfy 2 <= m <= p"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Builds the group, resolving names through the built-in catalog.
    pub fn build(&self, limits: &Limits) -> Result<Group> {
        self.validate()?;
        if let Some(order) = self.static_order() {
            if order > limits.max_order as u128 {
                return Err(Error::SizeLimit {
                    order: order.min(usize::MAX as u128) as usize,
                    limit: limits.max_order,
                });
            }
        }
        use GroupSpec::*;
        let g = match self {
            Cyclic(n) => families::cyclic(*n)?,
            Dihedral(n) => families::dihedral(*n)?,
            Dicyclic(n) => families::dicyclic(*n)?,
            Abelian(ds) => families::abelian(ds)?,
            Semidirect { m, n, r } => families::semidirect_cyclic(*m, *n, *r)?,
            Product(l, r) => {
                let (a, b) = (l.build(limits)?, r.build(limits)?);
                families::direct_product(&a, &b, limits.max_order)?
            }
            Perm { degree, gens } => {
                let perms = gens
                    .iter()
                    .map(|c| families::perm_from_cycles(*degree, c))
                    .collect::<Result<Vec<_>>>()?;
                families::from_permutations(*degree, &perms, limits.max_order)?
            }
            Alternating(d) => families::alternating(*d, limits.max_order)?,
            Symmetric(d) => families::symmetric(*d, limits.max_order)?,
            JordanP { p, m } => families::jordan_p_group(*p, *m)?,
            Named(name) => {
                let entry = crate::catalog::lookup(name)
                    .ok_or_else(|| Error::UnknownName(name.clone()))?;
                return Ok(entry.spec.build(limits)?.with_label(name.clone()));
            }
        };
        Ok(g.with_label(self.render()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Cyclic(n) => write!(f, "C{n}"),
            Dihedral(n) => write!(f, "D{n}"),
            Dicyclic(n) => write!(f, "Q{n}"),
            Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "Ab({})", parts.join(","))
            }
            Semidirect { m, n, r } => write!(f, "(C{m} : C{n} @ {r})"),
            Product(l, r) => {
                if matches!(**r, Product(..)) {
                    write!(f, "{l} x ({r})")
                } else {
                    write!(f, "{l} x {r}")
                }
            }
            Perm { degree, gens } => {
                write!(f, "Perm({degree}; ")?;
                for (k, cycles) in gens.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    if cycles.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                f.write_str(")")
            }
            Alternating(d) => write!(f, "A{d}"),
            Symmetric(d) => write!(f, "S{d}"),
            JordanP { p, m } => write!(f, "Jp({p},{m})"),
            Named(name) => f.write_str(name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Word(String),
    X,
    LParen,
    RParen,
    Colon,
    At,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Word(w) => format!("`{w}`"),
            Tok::X => "`x`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::At => "`@`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let mut push = |tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: tline,
                column: tcol,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '@' => push(Tok::At, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            'x' => push(Tok::X, 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse()
                    .map_err(|_| syntax(tline, tcol, format!("integer {s} is too large"), &[]))?;
                col += i - start;
                out.push(Token {
                    tok: Tok::Int(v),
                    line: tline,
                    column: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                // letters, then digits; a word never continues past its digits
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                col += i - start;
                out.push(Token {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line: tline,
                    column: tcol,
                });
            }
            other => {
                return Err(syntax(
                    tline,
                    tcol,
                    format!("unexpected character {other:?}"),
                    &["group atom", "`(`"],
                ))
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const ATOM_START: &[&str] = &["C<n>", "D<n>", "Q<n>", "A<n>", "S<n>", "Ab(", "Jp(", "Perm(", "NAME", "`(`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, format!("unexpected {}", t.tok.describe()), expected)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek().tok {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn usize(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| syntax(t.line, t.column, "integer too large", &[]))
    }

    fn product(&mut self) -> Result<GroupSpec> {
        let mut acc = self.term()?;
        while self.peek().tok == Tok::X {
            self.bump();
            let rhs = self.term()?;
            acc = GroupSpec::product(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpec> {
        if self.peek().tok != Tok::LParen {
            return self.atom();
        }
        let open = self.bump();
        let inner = self.product()?;
        if self.peek().tok == Tok::Colon {
            self.bump();
            let acting = self.atom()?;
            self.expect(Tok::At)?;
            let r = self.int()?;
            self.expect(Tok::RParen)?;
            let (m, n) = match (&inner, &acting) {
                (GroupSpec::Cyclic(m), GroupSpec::Cyclic(n)) => (*m, *n),
                _ => {
                    return Err(Error::Semantic {
                        parameter: format!("({inner} : {acting} @ {r})"),
                        message: "semidirect factors must both be cyclic".into(),
                    })
                }
            };
            let _ = open;
            return Ok(GroupSpec::Semidirect { m, n, r });
        }
        match self.peek().tok {
            Tok::RParen => {
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(&["`)`", "`:`", "`x`"])),
        }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        let t = self.peek().clone();
        let Tok::Word(word) = &t.tok else {
            return Err(self.unexpected(ATOM_START));
        };
        self.bump();
        let split = word.find(|c: char| c.is_ascii_digit()).unwrap_or(word.len());
        let (letters, digits) = word.split_at(split);
        let num = || -> Result<usize> {
            digits
                .parse()
                .map_err(|_| syntax(t.line, t.column, format!("bad integer in `{word}`"), &[]))
        };
        let followed_by_paren = self.peek().tok == Tok::LParen;
        Ok(match (letters, digits.is_empty()) {
            ("C", false) => GroupSpec::Cyclic(num()?),
            ("D", false) => GroupSpec::Dihedral(num()?),
            ("Q", false) => GroupSpec::Dicyclic(num()?),
            ("A", false) => GroupSpec::Alternating(num()?),
            ("S", false) => GroupSpec::Symmetric(num()?),
            ("Ab", true) if followed_by_paren => {
                self.bump();
                let mut ds = vec![self.usize()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    ds.push(self.usize()?);
                }
                self.expect(Tok::RParen)?;
                GroupSpec::Abelian(ds)
            }
            ("Jp", true) if followed_by_paren => {
                self.bump();
                let p = self.usize()?;
                self.expect(Tok::Comma)?;
                let m = self.usize()?;
                self.expect(Tok::RParen)?;
                GroupSpec::JordanP { p, m }
            }
            ("Perm", true) if followed_by_paren => {
                self.bump();
                let degree = self.usize()?;
                self.expect(Tok::Semi)?;
                let mut gens = vec![self.perm()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    gens.push(self.perm()?);
                }
                self.expect(Tok::RParen)?;
                GroupSpec::Perm { degree, gens }
            }
            _ => GroupSpec::Named(word.clone()),
        })
    }

    fn perm(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        if self.peek().tok != Tok::LParen {
            return Err(self.unexpected(&["`(`"]));
        }
        while self.peek().tok == Tok::LParen {
            self.bump();
            let mut c = Vec::new();
            while let Tok::Int(_) = self.peek().tok {
                c.push(self.usize()?);
            }
            self.expect(Tok::RParen)?;
            if !c.is_empty() {
                cycles.push(c);
            }
        }
        Ok(cycles)
    }
}

/// Parses and validates a group spec.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let spec = p.product()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected(&["`x`", "end of input"]));
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use GroupSpec::*;

    #[test]
    fn examples() {
        assert_eq!(parse_spec("D60").unwrap(), Dihedral(60));
        assert_eq!(
            parse_spec("S3 x D10").unwrap(),
            GroupSpec::product(Symmetric(3), Dihedral(10))
        );
        assert_eq!(parse_spec("S3xD10").unwrap(), parse_spec("S3 x D10").unwrap());
        assert_eq!(
            parse_spec("(C15 : C4 @ 2)").unwrap(),
            Semidirect { m: 15, n: 4, r: 2 }
        );
        assert_eq!(parse_spec("Ab(2, 2,15)").unwrap(), Abelian(vec![2, 2, 15]));
        assert_eq!(parse_spec("Jp(3,3)").unwrap(), JordanP { p: 3, m: 3 });
        assert_eq!(parse_spec("SD16").unwrap(), Named("SD16".into()));
        assert_eq!(
            parse_spec("Perm(4; (0 1 2), (0 1)(2 3))").unwrap(),
            Perm {
                degree: 4,
                gens: vec![vec![vec![0, 1, 2]], vec![vec![0, 1], vec![2, 3]]]
            }
        );
    }

    #[test]
    fn products_associate_left() {
        let s = parse_spec("C2 x C3 x C5").unwrap();
        assert_eq!(
            s,
            GroupSpec::product(GroupSpec::product(Cyclic(2), Cyclic(3)), Cyclic(5))
        );
        let r = parse_spec("C2 x (C3 x C5)").unwrap();
        assert_eq!(r.render(), "C2 x (C3 x C5)");
        assert_eq!(parse_spec("(C2 x C3) x C5").unwrap().render(), "C2 x C3 x C5");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_spec("C4 x\n  @") {
            Err(Error::Syntax { line, column, expected, .. }) => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains("Ab("));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_spec("C4 C5"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_spec("(C4 x C5"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_spec("C4 $"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn semantic_errors_name_parameter() {
        match parse_spec("(C15 : C4 @ 3)") {
            Err(Error::Semantic { parameter, .. }) => assert_eq!(parameter, "@ 3"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_spec("D7"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("(D8 : C2 @ 1)"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("Jp(4,2)"), Err(Error::Semantic { .. })));
    }

    #[test]
    fn build_respects_guard() {
        let limits = Limits::default();
        assert_eq!(parse_spec("S3 x D10").unwrap().build(&limits).unwrap().order(), 60);
        assert!(matches!(
            parse_spec("C100 x C100").unwrap().build(&limits),
            Err(Error::SizeLimit { order: 10000, .. })
        ));
        let big = Limits { max_order: 10000, ..limits };
        assert_eq!(parse_spec("C100 x C100").unwrap().build(&big).unwrap().order(), 10000);
        assert!(matches!(
            parse_spec("Nope").unwrap().build(&limits),
            Err(Error::UnknownName(_))
        ));
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            (1usize..50).prop_map(Cyclic),
            (2usize..25).prop_map(|n| Dihedral(2 * n)),
            (2usize..10).prop_map(|m| Dicyclic(4 * m)),
            proptest::collection::vec(2usize..6, 1..4).prop_map(Abelian),
            (1usize..6).prop_map(Symmetric),
            (1usize..6).prop_map(Alternating),
            Just(JordanP { p: 3, m: 2 }),
            Just(Semidirect { m: 15, n: 4, r: 2 }),
            Just(Named("SD16".into())),
            Just(Perm { degree: 4, gens: vec![vec![vec![0, 1, 2]], vec![]] }),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(l, r)| GroupSpec::product(l, r))
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(spec in arb_spec()) {
            let text = spec.render();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec.clone());
            let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            // removing whitespace is safe except between integers inside Perm cycles
            if !matches!(spec, Perm { .. }) && !text.contains("Perm") {
                prop_assert_eq!(parse_spec(&squeezed).unwrap(), spec);
            }
        }
    }
}
