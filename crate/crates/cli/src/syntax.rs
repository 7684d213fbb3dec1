//! Text syntax for pp-formulas.
//!
//! ```text
//! formula := "true" | conj | "E" yvar+ "." ( "(" conj ")" | conj )
//! conj    := atom ("&" atom)*
//! atom    := expr "=" expr
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := int ["/" int] | label | xvar | yvar | "(" expr ")"
//! ```
//!
//! Free variables are `x1, x2, …`, bound variables `y1, y2, …`. Coefficients act on the module's
//! side of a variable (`x1*a` for right modules, `a*x1` for left ones); scalars may stand on
//! either side.

use std::collections::BTreeMap;
use std::sync::Arc;

use ppz_core::algebra::{AlgElem, Algebra};
use ppz_core::module::Side;
use ppz_core::pp::PpFormula;
use ppz_core::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {msg}")]
pub struct SyntaxError {
    /// 1-based character column inside the parsed text.
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError { col, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[s..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '^') {
                i += 1;
            }
            out.push((Tok::Ident(chars[s..i].iter().collect()), col));
        } else if "+-*/=&.()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return err(col, format!("unexpected character `{c}`"));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    X(usize),
    Y(usize),
}

/// `Σ v · c_v + c_0`, coefficients written on the module side.
struct Lin<F: Field> {
    vars: BTreeMap<Var, AlgElem<F>>,
    constant: AlgElem<F>,
}

fn var_index(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

/// Whether `a` is a field multiple of the unit.
pub fn is_scalar<F: Field>(alg: &Algebra<F>, a: &[F::Elem]) -> bool {
    let f = alg.field();
    let unit = alg.unit();
    let Some(i) = unit.iter().position(|u| !f.is_zero(u)) else { return alg.is_zero(a) };
    let s = f.div(&a[i], &unit[i]).expect("non-zero pivot");
    alg.scale(&s, unit) == a
}

struct Parser<'a, F: Field> {
    alg: &'a Arc<Algebra<F>>,
    side: Side,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }
    fn col(&self) -> usize {
        self.toks[self.pos].1
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }
    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.col(), format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn constant(&self, a: AlgElem<F>) -> Lin<F> {
        Lin { vars: BTreeMap::new(), constant: a }
    }

    fn add(&self, mut a: Lin<F>, b: Lin<F>, negate: bool) -> Lin<F> {
        let alg = self.alg;
        let sign = |x: &AlgElem<F>| if negate { alg.neg(x) } else { x.clone() };
        for (v, c) in b.vars {
            let e = a.vars.entry(v).or_insert_with(|| alg.zero_elem());
            *e = alg.add(e, &sign(&c));
        }
        a.constant = alg.add(&a.constant, &sign(&b.constant));
        a
    }

    fn mul(&self, a: Lin<F>, b: Lin<F>, col: usize) -> Result<Lin<F>, SyntaxError> {
        let alg = self.alg;
        match (a.vars.is_empty(), b.vars.is_empty()) {
            (false, false) => err(col, "product of two variable terms is not linear"),
            (true, true) => Ok(self.constant(alg.mul(&a.constant, &b.constant))),
            (false, true) => {
                if self.side == Side::Left && !is_scalar(alg, &b.constant) {
                    return err(col, "coefficients of a left module act from the left, write `a*x1`");
                }
                Ok(Lin {
                    vars: a.vars.into_iter().map(|(v, c)| (v, alg.mul(&c, &b.constant))).collect(),
                    constant: alg.mul(&a.constant, &b.constant),
                })
            }
            (true, false) => {
                if self.side == Side::Right && !is_scalar(alg, &a.constant) {
                    return err(col, "coefficients of a right module act from the right, write `x1*a`");
                }
                Ok(Lin {
                    vars: b.vars.into_iter().map(|(v, c)| (v, alg.mul(&a.constant, &c))).collect(),
                    constant: alg.mul(&a.constant, &b.constant),
                })
            }
        }
    }

    fn integer(&self, s: &str, col: usize) -> Result<F::Elem, SyntaxError> {
        let f = self.alg.field();
        match s.parse::<i64>() {
            Ok(v) => Ok(f.from_i64(v)),
            Err(_) => err(col, format!("integer `{s}` is too large")),
        }
    }

    fn factor(&mut self) -> Result<Lin<F>, SyntaxError> {
        let col = self.col();
        let alg = self.alg;
        match self.bump() {
            Tok::Num(s) => {
                let mut v = self.integer(&s, col)?;
                if self.eat('/') {
                    let dcol = self.col();
                    let Tok::Num(d) = self.bump() else { return err(dcol, "expected a denominator") };
                    let d = self.integer(&d, dcol)?;
                    v = match alg.field().div(&v, &d) {
                        Some(q) => q,
                        None => return err(dcol, "denominator vanishes in the field"),
                    };
                }
                Ok(self.constant(alg.scale(&v, alg.unit())))
            }
            Tok::Ident(name) => {
                let var = if let Some(i) = var_index(&name, 'x') {
                    Some(Var::X(i))
                } else if let Some(i) = self.bound.iter().position(|b| *b == name) {
                    Some(Var::Y(i))
                } else if var_index(&name, 'y').is_some() && alg.index_of(&name).is_none() {
                    return err(col, format!("bound variable `{name}` is not declared"));
                } else {
                    None
                };
                match var {
                    Some(v) => Ok(Lin { vars: BTreeMap::from([(v, alg.unit().clone())]), constant: alg.zero_elem() }),
                    None => match alg.index_of(&name) {
                        Some(i) => Ok(self.constant(alg.basis_elem(i))),
                        None => err(col, format!("unknown label `{name}`; labels are {}", alg.labels().join(", "))),
                    },
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                let inner = self.factor()?;
                Ok(self.add(self.constant(alg.zero_elem()), inner, true))
            }
            t => err(col, format!("expected a term, found {}", describe(&t))),
        }
    }

    fn term(&mut self) -> Result<Lin<F>, SyntaxError> {
        let mut acc = self.factor()?;
        loop {
            let col = self.col();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs, col)?;
        }
    }

    fn expr(&mut self) -> Result<Lin<F>, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.add(acc, t, false);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.add(acc, t, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Lin<F>, SyntaxError> {
        let col = self.col();
        let lhs = self.expr()?;
        self.expect('=')?;
        let rhs = self.expr()?;
        let diff = self.add(lhs, rhs, true);
        if !self.alg.is_zero(&diff.constant) {
            return err(col, "equation has a constant term");
        }
        Ok(diff)
    }

    fn conj(&mut self) -> Result<Vec<Lin<F>>, SyntaxError> {
        if *self.peek() == Tok::Ident("true".into()) {
            self.bump();
            return Ok(Vec::new());
        }
        let mut atoms = vec![self.atom()?];
        while self.eat('&') {
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn formula(&mut self) -> Result<Vec<Lin<F>>, SyntaxError> {
        if *self.peek() == Tok::Ident("E".into()) {
            self.bump();
            loop {
                let col = self.col();
                match self.peek().clone() {
                    Tok::Ident(name) if var_index(&name, 'y').is_some() => {
                        if self.bound.contains(&name) {
                            return err(col, format!("`{name}` is declared twice"));
                        }
                        self.bound.push(name);
                        self.bump();
                    }
                    Tok::Sym('.') if !self.bound.is_empty() => {
                        self.bump();
                        break;
                    }
                    t => return err(col, format!("expected a bound variable y1, y2, … or `.`, found {}", describe(&t))),
                }
            }
            if *self.peek() == Tok::Sym('(') {
                // `(conj)`, or a conjunction whose first term is parenthesized
                let save = self.pos;
                self.bump();
                let grouped = self.conj().and_then(|atoms| {
                    self.expect(')')?;
                    Ok(atoms)
                });
                let grouped: Result<Vec<Lin<F>>, SyntaxError> = match grouped {
                    Ok(atoms) if *self.peek() == Tok::End => return Ok(atoms),
                    Ok(_) => err(self.col(), format!("unexpected {}", describe(self.peek()))),
                    Err(e) => Err(e),
                };
                self.pos = save;
                return match (self.conj(), grouped) {
                    (Ok(atoms), _) => Ok(atoms),
                    (Err(plain), Err(g)) if g.col > plain.col => Err(g),
                    (Err(plain), _) => Err(plain),
                };
            }
        }
        self.conj()
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Parses a formula; `arity` fixes the number of free variables (default: the largest `x` index).
pub fn parse_formula<F: Field>(alg: &Arc<Algebra<F>>, side: Side, text: &str, arity: Option<usize>) -> Result<PpFormula<F>, SyntaxError> {
    let mut p = Parser { alg, side, toks: tokenize(text)?, pos: 0, bound: Vec::new() };
    let atoms = p.formula()?;
    if *p.peek() != Tok::End {
        return err(p.col(), format!("unexpected {}", describe(p.peek())));
    }
    let max_x = atoms.iter().flat_map(|a| a.vars.keys()).filter_map(|v| if let Var::X(i) = v { Some(*i) } else { None }).max().unwrap_or(0);
    let n = match arity {
        Some(n) if max_x > n => return err(1, format!("x{max_x} exceeds the arity {n}")),
        Some(n) => n,
        None => max_x.max(1),
    };
    let l = p.bound.len();
    let m = atoms.len();
    let mut h = vec![alg.zero_elem(); (n + l) * m];
    for (eq, atom) in atoms.iter().enumerate() {
        for (v, c) in &atom.vars {
            let row = match *v {
                Var::X(i) => i - 1,
                Var::Y(i) => n + i,
            };
            h[row * m + eq] = c.clone();
        }
    }
    PpFormula::new(alg.clone(), side, n, l, m, h).map_err(|e| SyntaxError { col: 1, msg: e.to_string() })
}

fn coefficient<F: Field>(alg: &Algebra<F>, c: &[F::Elem]) -> Option<String> {
    if c == alg.unit().as_slice() {
        return None;
    }
    if let Some(i) = (0..alg.dim()).find(|&i| alg.basis_elem(i) == c) {
        return Some(alg.labels()[i].clone());
    }
    Some(format!("({})", alg.format_elem(c)))
}

/// Prints a formula in the syntax accepted by [`parse_formula`].
pub fn format_formula<F: Field>(phi: &PpFormula<F>) -> String {
    let alg = phi.algebra();
    let n = phi.n();
    let name = |v: usize| if v < n { format!("x{}", v + 1) } else { format!("y{}", v - n + 1) };
    let atoms: Vec<String> = (0..phi.m())
        .map(|eq| {
            let terms: Vec<String> = (0..n + phi.l())
                .filter(|&v| !alg.is_zero(phi.entry(v, eq)))
                .map(|v| match (coefficient(alg, phi.entry(v, eq)), phi.side()) {
                    (None, _) => name(v),
                    (Some(c), Side::Right) => format!("{}*{c}", name(v)),
                    (Some(c), Side::Left) => format!("{c}*{}", name(v)),
                })
                .collect();
            if terms.is_empty() {
                "0 = 0".to_string()
            } else {
                format!("{} = 0", terms.join(" + "))
            }
        })
        .collect();
    let body = if atoms.is_empty() { "true".to_string() } else { atoms.join(" & ") };
    if phi.l() == 0 {
        body
    } else {
        let ys: Vec<String> = (0..phi.l()).map(|i| format!("y{}", i + 1)).collect();
        format!("E {} . ({body})", ys.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppz_core::universe::{dvr_algebra, kronecker_algebra};
    use ppz_core::{PrimeField, Rationals};

    #[test]
    fn annihilator_and_divisibility() {
        let alg = dvr_algebra(PrimeField::gf2(), 3).unwrap();
        let x = alg.elem("x").unwrap();
        let phi = parse_formula(&alg, Side::Right, "x1*x = 0", None).unwrap();
        assert_eq!(phi, PpFormula::annihilator(alg.clone(), Side::Right, &x));
        let psi = parse_formula(&alg, Side::Right, "E y1 . (x1 - y1*x = 0)", None).unwrap();
        assert_eq!(psi, PpFormula::divisibility(alg.clone(), Side::Right, &x));
        assert_eq!(format_formula(&psi), "E y1 . (x1 + y1*x = 0)");
        let left = parse_formula(&alg, Side::Left, "E y1 . x1 = x*y1", None).unwrap();
        assert_eq!(left, PpFormula::divisibility(alg.clone(), Side::Left, &x));
        assert_eq!(format_formula(&left), "E y1 . (x1 + x*y1 = 0)");
    }

    #[test]
    fn coefficients_respect_the_side() {
        let alg = kronecker_algebra(PrimeField::gf2()).unwrap();
        let e = parse_formula(&alg, Side::Right, "a*x1 = 0", None).unwrap_err();
        assert_eq!(e.col, 2);
        assert!(parse_formula(&alg, Side::Left, "x1*a = 0", None).is_err());
        assert!(parse_formula(&alg, Side::Right, "x1*a*b = 0 & 1*x1 = x2*(a + b)", None).is_ok());
        let e = parse_formula(&alg, Side::Right, "x1*c = 0", None).unwrap_err();
        assert_eq!(e.col, 4);
        assert!(parse_formula(&alg, Side::Right, "x1*y1 = 0", None).is_err());
        assert!(parse_formula(&alg, Side::Right, "x1 = a", None).is_err());
    }

    #[test]
    fn print_then_parse_is_identity() {
        let alg = dvr_algebra(Rationals, 3).unwrap();
        let h = vec![
            vec![alg.unit().clone(), alg.zero_elem()],
            vec![alg.scale(&ppz_core::Rat::new(-1, 2), &alg.elem("x").unwrap()), alg.add(&alg.elem("x").unwrap(), &alg.elem("x^2").unwrap())],
            vec![alg.zero_elem(), alg.zero_elem()],
        ];
        let phi = PpFormula::from_rows(alg.clone(), Side::Right, 1, h).unwrap();
        let text = format_formula(&phi);
        assert_eq!(parse_formula(&alg, Side::Right, &text, Some(1)).unwrap(), phi, "{text}");
    }

    #[test]
    fn negative_coefficients_parse() {
        let alg = dvr_algebra(Rationals, 3).unwrap();
        let phi = parse_formula(&alg, Side::Left, "E y1 . ((1 + -3*x)*x1 + -y1 = 0)", None).unwrap();
        let psi = parse_formula(&alg, Side::Left, "E y1 . ((1 - 3*x)*x1 = y1)", None).unwrap();
        assert!(phi.equivalent(&psi).unwrap());
        let e = parse_formula(&alg, Side::Left, "E y1 . (x*x1 + y1 = 0 & )", None).unwrap_err();
        // reported inside the group, not where the ungrouped reading gave up
        assert_eq!(e.col, 25);
    }

    #[test]
    fn tautology_and_empty_equations() {
        let alg = dvr_algebra(PrimeField::gf2(), 2).unwrap();
        let t = parse_formula(&alg, Side::Right, "true", Some(2)).unwrap();
        assert_eq!(t, PpFormula::tautology(alg.clone(), Side::Right, 2));
        assert_eq!(format_formula(&t), "true");
        let z = parse_formula(&alg, Side::Right, "0 = 0", Some(1)).unwrap();
        assert_eq!((z.m(), format_formula(&z)), (1, "0 = 0".to_string()));
    }
}
