//! Multivariate polynomial arithmetic over F_p with the standard grading,
//! presentation parsing, and ring-level numerics.
//!
//! Monomial order is degree reverse lexicographic with x_1 > ... > x_v.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field_linalg::PrimeField;
use crate::serieslab::SeriesPoly;

/// Exponent vector; degree is the sum of exponents (all variables degree 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }
}

/// Degrevlex with x_1 > ... > x_v.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.degree();
        let db = other.degree();
        if da != db {
            return da.cmp(&db);
        }
        // equal degree: larger iff the last nonzero entry of (self - other)
        // is negative
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Monomial> {
    fn rec(nvars: usize, idx: usize, rem: i64, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if idx == nvars - 1 {
            cur[idx] = rem as u16;
            out.push(Monomial { exps: cur.clone() });
            return;
        }
        for e in 0..=rem {
            cur[idx] = e as u16;
            rec(nvars, idx + 1, rem - e, cur, out);
        }
    }
    if d < 0 {
        return Vec::new();
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial { exps: vec![] }] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    rec(nvars, 0, d, &mut cur, &mut out);
    out.sort();
    out.reverse(); // descending in the monomial order
    out
}

/// Polynomial over F_p: terms strictly decreasing in degrevlex, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: Vec<(u64, Monomial)>,
    field: PrimeField,
}

impl Polynomial {
    pub fn zero(field: PrimeField, _nvars: usize) -> Self {
        Polynomial { terms: Vec::new(), field }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let c = c % field.p();
        if c == 0 {
            Self::zero(field, nvars)
        } else {
            Polynomial { terms: vec![(c, Monomial::one(nvars))], field }
        }
    }

    pub fn monomial(field: PrimeField, coeff: u64, m: Monomial) -> Self {
        let c = coeff % field.p();
        if c == 0 {
            Polynomial { terms: Vec::new(), field }
        } else {
            Polynomial { terms: vec![(c, m)], field }
        }
    }

    pub fn from_terms(field: PrimeField, terms: Vec<(u64, Monomial)>) -> Self {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (c, m) in terms {
            let e = map.entry(m).or_insert(0);
            *e = field.add(*e, c % field.p());
        }
        let mut out: Vec<(u64, Monomial)> =
            map.into_iter().filter(|&(_, c)| c != 0).map(|(m, c)| (c, m)).collect();
        out.sort_by(|a, b| b.1.cmp(&a.1));
        Polynomial { terms: out, field }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(u64, Monomial)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m0)) => {
                let d = m0.degree();
                self.terms.iter().all(|(_, m)| m.degree() == d)
            }
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u64 {
        self.terms
            .iter()
            .find(|(_, m)| m.degree() == 0)
            .map_or(0, |&(c, _)| c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        Polynomial::from_terms(self.field, terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, s: u64) -> Polynomial {
        let f = self.field;
        let s = s % f.p();
        if s == 0 {
            return Polynomial { terms: Vec::new(), field: f };
        }
        Polynomial {
            terms: self.terms.iter().map(|(c, m)| (f.mul(*c, s), m.clone())).collect(),
            field: f,
        }
    }

    pub fn mul_term(&self, coeff: u64, mono: &Monomial) -> Polynomial {
        let f = self.field;
        let coeff = coeff % f.p();
        if coeff == 0 {
            return Polynomial { terms: Vec::new(), field: f };
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (f.mul(*c, coeff), m.mul(mono)))
                .collect(),
            field: f,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = self.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                terms.push((f.mul(*c1, *c2), m1.mul(m2)));
            }
        }
        Polynomial::from_terms(f, terms)
    }

    pub fn render(&self, var_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (c, m) in &self.terms {
            let mut factors = Vec::new();
            if *c != 1 || m.degree() == 0 {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 1 {
                    factors.push(var_names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", var_names[i], e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses a polynomial from the presentation-file term grammar.
    pub fn parse(field: PrimeField, var_names: &[String], text: &str) -> Result<Polynomial> {
        parse_poly_inner(field, var_names, text, 0, 0)
    }
}

fn parse_poly_inner(
    field: PrimeField,
    var_names: &[String],
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Polynomial> {
    let nvars = var_names.len();
    let err = |col: usize, msg: &str| Error::Parse {
        line,
        col: col0 + col,
        msg: msg.to_string(),
    };
    // split into signed terms
    let mut terms: Vec<(u64, Monomial)> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut sign = 1i64;
    let mut any = false;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        if bytes[i] == b'+' {
            sign = 1;
            i += 1;
            continue;
        }
        if bytes[i] == b'-' {
            sign = -1;
            i += 1;
            continue;
        }
        // read one term up to the next top-level + or -
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term_text = text[start..i].trim();
        if term_text.is_empty() {
            return Err(err(start, "empty term"));
        }
        let mut coeff: u64 = 1;
        let mut mono = Monomial::one(nvars);
        for factor in term_text.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(err(start, "empty factor"));
            }
            if factor.chars().all(|c| c.is_ascii_digit()) {
                let c: u64 = factor
                    .parse()
                    .map_err(|_| err(start, "bad integer coefficient"))?;
                coeff = field.mul(coeff, c % field.p());
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u16 = e
                        .trim()
                        .parse()
                        .map_err(|_| err(start, "bad exponent"))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = var_names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| err(start, &format!("unknown variable '{name}'")))?;
            mono.exps[idx] += exp;
        }
        let signed = if sign < 0 { field.neg(coeff) } else { coeff };
        terms.push((signed, mono));
        sign = 1;
        any = true;
    }
    if !any {
        return Err(err(0, "empty polynomial"));
    }
    Ok(Polynomial::from_terms(field, terms))
}

/// A standard graded quotient R = F_p[x_1..x_v]/I with its cached reduced
/// Groebner basis. Ideal generators must be homogeneous of degree >= 2, so
/// edim R equals the number of variables.
#[derive(Debug)]
pub struct RingPresentation {
    pub field: PrimeField,
    pub var_names: Vec<String>,
    pub ideal_gens: Vec<Polynomial>,
    gb: Vec<Polynomial>,
    basis_cache: Mutex<std::collections::HashMap<i64, Vec<Monomial>>>,
}

impl RingPresentation {
    pub fn new(
        field: PrimeField,
        var_names: Vec<String>,
        ideal_gens: Vec<Polynomial>,
    ) -> Result<Arc<Self>> {
        for g in &ideal_gens {
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(g.render(&var_names)));
            }
            if let Some(d) = g.degree() {
                if d < 2 {
                    return Err(Error::NonHomogeneous(format!(
                        "ideal generator of degree {} < 2: {}",
                        d,
                        g.render(&var_names)
                    )));
                }
            }
        }
        let gens: Vec<Polynomial> = ideal_gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb = crate::groebner::ideal_gb(field, var_names.len(), &gens);
        Ok(Arc::new(RingPresentation {
            field,
            var_names,
            ideal_gens,
            gb,
            basis_cache: Mutex::new(std::collections::HashMap::new()),
        }))
    }

    /// Convenience: parse from "char p; vars ...; ideal ..." fragments.
    pub fn parse(chr: u64, vars: &str, ideal: &[&str]) -> Result<Arc<Self>> {
        let field = PrimeField::new(chr)?;
        let var_names: Vec<String> = vars.split_whitespace().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| Polynomial::parse(field, &var_names, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, var_names, gens)
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        crate::groebner::poly_normal_form(f, &self.gb)
    }

    /// Standard-monomial basis of R_d: monomials of degree d not divisible
    /// by any leading term of the Groebner basis.
    pub fn degree_basis(&self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        if let Some(b) = self.basis_cache.lock().unwrap().get(&d) {
            return b.clone();
        }
        let lts: Vec<&Monomial> = self.gb.iter().filter_map(|g| g.leading().map(|t| &t.1)).collect();
        let basis: Vec<Monomial> = monomials_of_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| !lts.iter().any(|lt| lt.divides(m)))
            .collect();
        self.basis_cache.lock().unwrap().insert(d, basis.clone());
        basis
    }

    pub fn hilbert_series(&self, cutoff: i64) -> SeriesPoly {
        let coeffs: Vec<i64> = (0..=cutoff)
            .map(|d| self.degree_basis(d).len() as i64)
            .collect();
        SeriesPoly::new(0, coeffs, cutoff)
    }

    /// (edim, krull_dim). Krull dimension is the combinatorial dimension of
    /// the leading-term ideal: the largest variable subset S such that no
    /// leading term is supported inside S.
    pub fn ring_numerics(&self) -> (usize, usize) {
        let v = self.nvars();
        let lts: Vec<&Monomial> = self.gb.iter().filter_map(|g| g.leading().map(|t| &t.1)).collect();
        let mut best = 0usize;
        for mask in 0..(1u32 << v) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let supported_inside = |m: &Monomial| {
                m.exps
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| e == 0 || (mask >> i) & 1 == 1)
            };
            if !lts.iter().any(|lt| supported_inside(lt)) {
                best = size;
            }
        }
        (v, best)
    }

    pub fn is_artinian(&self) -> bool {
        self.ring_numerics().1 == 0
    }

    /// Top degree with R_d != 0, for artinian R.
    pub fn top_degree(&self) -> Result<i64> {
        if !self.is_artinian() {
            return Err(Error::Unsupported("top_degree requires an artinian ring".into()));
        }
        let mut d = 0i64;
        let mut top = 0i64;
        loop {
            if self.degree_basis(d).is_empty() {
                return Ok(top);
            }
            top = d;
            d += 1;
        }
    }
}

/// A finitely generated graded R-module: a twisted free cover with
/// homogeneous relation columns, entries in normal form.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    pub ring: Arc<RingPresentation>,
    pub row_twists: Vec<i64>,
    /// Relation columns; each column has one entry per generator row.
    pub relations: Vec<Vec<Polynomial>>,
}

impl ModulePresentation {
    pub fn new(
        ring: Arc<RingPresentation>,
        row_twists: Vec<i64>,
        relations: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let relations: Vec<Vec<Polynomial>> = relations
            .into_iter()
            .map(|col| col.into_iter().map(|e| ring.normal_form(&e)).collect())
            .collect();
        for col in &relations {
            if col.len() != row_twists.len() {
                return Err(Error::DimensionMismatch(format!(
                    "relation column of length {} vs {} generators",
                    col.len(),
                    row_twists.len()
                )));
            }
            // all nonzero entries must agree on column degree
            let mut coldeg: Option<i64> = None;
            for (r, e) in col.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !e.is_homogeneous() {
                    return Err(Error::NonHomogeneous(e.render(&ring.var_names)));
                }
                let d = e.degree().unwrap() + row_twists[r];
                match coldeg {
                    None => coldeg = Some(d),
                    Some(c) if c == d => {}
                    Some(c) => {
                        return Err(Error::NonHomogeneous(format!(
                            "relation column mixes degrees {c} and {d}"
                        )))
                    }
                }
            }
        }
        let relations = relations.into_iter().filter(|c| c.iter().any(|e| !e.is_zero())).collect();
        Ok(ModulePresentation { ring, row_twists, relations })
    }

    /// The residue field k = R/m.
    pub fn residue_field(ring: &Arc<RingPresentation>) -> Self {
        let f = ring.field;
        let v = ring.nvars();
        let relations = (0..v)
            .map(|i| vec![Polynomial::monomial(f, 1, Monomial::var(v, i))])
            .collect();
        ModulePresentation { ring: Arc::clone(ring), row_twists: vec![0], relations }
    }

    /// R as a module over itself.
    pub fn free_rank_one(ring: &Arc<RingPresentation>) -> Self {
        ModulePresentation { ring: Arc::clone(ring), row_twists: vec![0], relations: Vec::new() }
    }

    /// Cyclic module R/J for homogeneous J.
    pub fn cyclic(ring: &Arc<RingPresentation>, gens: &[Polynomial]) -> Result<Self> {
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        ModulePresentation::new(Arc::clone(ring), vec![0], cols)
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        assert!(Arc::ptr_eq(&self.ring, &other.ring), "direct sum over one ring");
        let f = self.ring.field;
        let v = self.ring.nvars();
        let mut twists = self.row_twists.clone();
        twists.extend(other.row_twists.iter().copied());
        let zero = Polynomial::zero(f, v);
        let mut rels = Vec::new();
        for col in &self.relations {
            let mut c = col.clone();
            c.extend(std::iter::repeat(zero.clone()).take(other.row_twists.len()));
            rels.push(c);
        }
        for col in &other.relations {
            let mut c: Vec<Polynomial> =
                std::iter::repeat(zero.clone()).take(self.row_twists.len()).collect();
            c.extend(col.clone());
            rels.push(c);
        }
        ModulePresentation { ring: Arc::clone(&self.ring), row_twists: twists, relations: rels }
    }

    /// Internal-degree shift M(-s): generator degrees move up by s.
    pub fn twist(&self, s: i64) -> ModulePresentation {
        ModulePresentation {
            ring: Arc::clone(&self.ring),
            row_twists: self.row_twists.iter().map(|t| t + s).collect(),
            relations: self.relations.clone(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.row_twists.is_empty()
    }
}

/// A parsed presentation file: one ring plus any number of named modules.
#[derive(Debug)]
pub struct ParsedFile {
    pub ring: Arc<RingPresentation>,
    pub modules: Vec<(String, ModulePresentation)>,
}

/// Parses the line-oriented presentation grammar:
/// `char p`, `vars ...`, `ideal p1, p2, ...`, then repeated
/// `module NAME`, `gens t1 t2 ...`, `rel e1 ; e2 ; ...` blocks.
pub fn parse_presentation(text: &str) -> Result<ParsedFile> {
    let mut chr: Option<u64> = None;
    let mut vars: Vec<String> = Vec::new();
    let mut ideal_lines: Vec<(usize, String)> = Vec::new();
    struct RawModule {
        name: String,
        gens: Vec<i64>,
        rels: Vec<(usize, String)>,
    }
    let mut modules: Vec<RawModule> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match kw {
            "char" => {
                chr = Some(rest.parse().map_err(|_| Error::Parse {
                    line,
                    col: 6,
                    msg: "expected a prime after 'char'".into(),
                })?);
            }
            "vars" => {
                vars = rest.split_whitespace().map(|s| s.to_string()).collect();
            }
            "ideal" => {
                ideal_lines.push((line, rest.to_string()));
            }
            "module" => {
                modules.push(RawModule { name: rest.to_string(), gens: Vec::new(), rels: Vec::new() });
            }
            "gens" => {
                let m = modules.last_mut().ok_or(Error::Parse {
                    line,
                    col: 1,
                    msg: "'gens' before any 'module' line".into(),
                })?;
                m.gens = rest
                    .split_whitespace()
                    .map(|s| s.parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse { line, col: 6, msg: "bad twist integer".into() })?;
            }
            "rel" => {
                let m = modules.last_mut().ok_or(Error::Parse {
                    line,
                    col: 1,
                    msg: "'rel' before any 'module' line".into(),
                })?;
                m.rels.push((line, rest.to_string()));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("unknown directive '{other}'"),
                })
            }
        }
    }

    let p = chr.ok_or(Error::Parse { line: 0, col: 0, msg: "missing 'char' directive".into() })?;
    let field = PrimeField::new(p)?;
    if vars.is_empty() {
        return Err(Error::Parse { line: 0, col: 0, msg: "missing 'vars' directive".into() });
    }
    let mut ideal = Vec::new();
    for (line, text) in ideal_lines {
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            ideal.push(parse_poly_inner(field, &vars, part, line, 0)?);
        }
    }
    let ring = RingPresentation::new(field, vars.clone(), ideal)?;

    let mut out_modules = Vec::new();
    for m in modules {
        let mut cols = Vec::new();
        for (line, rel) in &m.rels {
            let entries: Vec<Polynomial> = rel
                .split(';')
                .map(|e| {
                    let e = e.trim();
                    if e == "0" || e.is_empty() {
                        Ok(Polynomial::zero(field, vars.len()))
                    } else {
                        parse_poly_inner(field, &vars, e, *line, 0)
                    }
                })
                .collect::<Result<_>>()?;
            cols.push(entries);
        }
        let mp = ModulePresentation::new(Arc::clone(&ring), m.gens.clone(), cols)?;
        out_modules.push((m.name, mp));
    }
    Ok(ParsedFile { ring, modules: out_modules })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn degrevlex_order() {
        // In F[x,y] degrevlex: x^2 > xy > y^2 > x > y > 1
        let x2 = Monomial { exps: vec![2, 0] };
        let xy = Monomial { exps: vec![1, 1] };
        let y2 = Monomial { exps: vec![0, 2] };
        let x = Monomial { exps: vec![1, 0] };
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn poly_parse_and_arith() {
        let f = f101();
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = Polynomial::parse(f, &vars, "x^2 + 2*x*y - y^2").unwrap();
        assert_eq!(p.terms.len(), 3);
        assert!(p.is_homogeneous());
        let q = Polynomial::parse(f, &vars, "x - y").unwrap();
        let prod = p.mul(&q);
        assert!(prod.is_homogeneous());
        assert_eq!(prod.degree(), Some(3));
    }

    #[test]
    fn ring_smallest_singular() {
        let r = RingPresentation::parse(101, "x", &["x^2"]).unwrap();
        assert_eq!(r.degree_basis(0).len(), 1);
        assert_eq!(r.degree_basis(1).len(), 1);
        assert_eq!(r.degree_basis(2).len(), 0);
        let (edim, dim) = r.ring_numerics();
        assert_eq!((edim, dim), (1, 0));
    }

    #[test]
    fn ring_square_of_max_ideal() {
        let r = RingPresentation::parse(101, "x y", &["x^2", "x*y", "y^2"]).unwrap();
        assert_eq!(r.degree_basis(1).len(), 2);
        assert_eq!(r.degree_basis(2).len(), 0);
        let h = r.hilbert_series(5);
        assert_eq!(h.coeff(0), 1);
        assert_eq!(h.coeff(1), 2);
        assert_eq!(h.coeff(2), 0);
    }

    #[test]
    fn ring_hypersurface_xy() {
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        // degree 3 basis: x^3, y^3 (remove multiples of xy)
        let b3 = r.degree_basis(3);
        assert_eq!(b3.len(), 2);
        let (edim, dim) = r.ring_numerics();
        assert_eq!((edim, dim), (2, 1));
        let h = r.hilbert_series(4);
        assert_eq!(
            (0..=4).map(|d| h.coeff(d)).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 2]
        );
    }

    #[test]
    fn polynomial_ring_numerics() {
        let r = RingPresentation::parse(101, "x y", &[]).unwrap();
        assert_eq!(r.ring_numerics(), (2, 2));
        assert!(!r.is_artinian());
    }

    #[test]
    fn non_homogeneous_rejected() {
        assert!(RingPresentation::parse(101, "x", &["x^2 + 1"]).is_err());
    }

    #[test]
    fn linear_ideal_generator_rejected() {
        assert!(RingPresentation::parse(101, "x y", &["x"]).is_err());
    }

    #[test]
    fn parse_presentation_file() {
        let text = "\
# a test file
char 101
vars x y
ideal x*y

module M
gens 0
rel x + y
";
        let parsed = parse_presentation(text).unwrap();
        assert_eq!(parsed.ring.nvars(), 2);
        assert_eq!(parsed.modules.len(), 1);
        let (name, m) = &parsed.modules[0];
        assert_eq!(name, "M");
        assert_eq!(m.row_twists, vec![0]);
        assert_eq!(m.relations.len(), 1);
    }

    #[test]
    fn parse_reports_position() {
        let text = "char 101\nvars x\nideal x^2 + zz";
        match parse_presentation(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn hilbert_monotone_under_quotient() {
        let r1 = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let r2 = RingPresentation::parse(101, "x y", &["x*y", "x^3"]).unwrap();
        for d in 0..8 {
            assert!(r2.degree_basis(d).len() <= r1.degree_basis(d).len());
        }
    }

    #[test]
    fn artinian_hilbert_eventually_zero() {
        let r = RingPresentation::parse(101, "x y", &["x^2", "y^3"]).unwrap();
        assert!(r.is_artinian());
        assert_eq!(r.top_degree().unwrap(), 3);
        assert_eq!(r.degree_basis(4).len(), 0);
    }
}
