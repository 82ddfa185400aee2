//! Minimal graded free resolutions over R = P/I up to a homological cutoff,
//! Betti tables, syzygy presentations, and truncation-with-projection.
//!
//! The engine works strand by strand: every graded piece of a free module
//! over R has the finite basis {(generator, standard monomial)}, so kernels
//! of differentials are plain F_p linear algebra. Minimal generators of each
//! successive kernel are extracted degreewise as a complement of
//! R_1 * (kernel one degree lower); by graded Nakayama the resulting
//! resolution is minimal, which is re-verified on the produced entries.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field_linalg::{FMatrix, IncrementalSpan, Subspace};
use crate::polyring::{ModulePresentation, Monomial, Polynomial, RingPresentation};

/// Free graded module, recorded by its generator degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// Basis of the internal-degree-d strand of a twisted free module over R:
/// pairs (generator index, standard monomial of degree d - twist).
pub fn free_strand_basis(
    ring: &RingPresentation,
    twists: &[i64],
    d: i64,
) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (g, &t) in twists.iter().enumerate() {
        for m in ring.degree_basis(d - t) {
            out.push((g, m));
        }
    }
    out
}

fn strand_index(basis: &[(usize, Monomial)]) -> HashMap<(usize, Monomial), usize> {
    basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect()
}

/// Multiplies a strand vector of a free module by a homogeneous polynomial,
/// landing in the strand of degree d + deg(p); entries reduced to normal form.
pub fn mul_free_vec_by_poly(
    ring: &RingPresentation,
    basis: &[(usize, Monomial)],
    v: &[u64],
    p: &Polynomial,
    target_index: &HashMap<(usize, Monomial), usize>,
    target_len: usize,
) -> Vec<u64> {
    let f = ring.field;
    let mut out = vec![0u64; target_len];
    for (pos, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (r, ref m) = basis[pos];
        for (pc, pm) in &p.terms {
            let prod = ring.normal_form(&Polynomial::monomial(f, 1, m.mul(pm)));
            for (cc, mm) in &prod.terms {
                if let Some(&k) = target_index.get(&(r, mm.clone())) {
                    out[k] = f.add(out[k], f.mul(f.mul(c, *pc), *cc));
                }
            }
        }
    }
    out
}

/// Strand matrix of a polynomial matrix (rows over row_twists, columns over
/// col_twists) in internal degree d.
pub fn poly_matrix_strand(
    ring: &RingPresentation,
    row_twists: &[i64],
    mat: &[Vec<Polynomial>],
    col_twists: &[i64],
    d: i64,
) -> FMatrix {
    let f = ring.field;
    let src = free_strand_basis(ring, col_twists, d);
    let dst = free_strand_basis(ring, row_twists, d);
    let idx = strand_index(&dst);
    let mut out = FMatrix::zero(f, dst.len(), src.len());
    for (j, (g, m)) in src.iter().enumerate() {
        for (r, row) in mat.iter().enumerate() {
            let e = &row[*g];
            if e.is_zero() {
                continue;
            }
            let prod = ring.normal_form(&e.mul_term(1, m));
            for (c, mm) in &prod.terms {
                if let Some(&k) = idx.get(&(r, mm.clone())) {
                    out.set(k, j, f.add(out.get(k, j), *c));
                }
            }
        }
    }
    out
}

/// One graded piece of a presented module: the cover strand modulo the
/// relation span, with canonical coset representatives on the free rows.
#[derive(Debug)]
pub struct QuotientStrand {
    pub ambient: Vec<(usize, Monomial)>,
    pub index: HashMap<(usize, Monomial), usize>,
    rel_basis: Subspace,
    pivot_rows: Vec<usize>,
    free_rows: Vec<usize>,
}

impl QuotientStrand {
    pub fn dim(&self) -> usize {
        self.free_rows.len()
    }

    /// Canonical quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[u64]) -> Vec<u64> {
        let f = self.rel_basis.field();
        let mut v = v.to_vec();
        for (j, &piv) in self.pivot_rows.iter().enumerate() {
            let c = v[piv];
            if c != 0 {
                let col = self.rel_basis.basis.col(j);
                for i in 0..v.len() {
                    v[i] = f.sub(v[i], f.mul(c, col[i]));
                }
            }
        }
        self.free_rows.iter().map(|&i| v[i]).collect()
    }

    /// The canonical ambient representative of quotient coordinates.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.ambient.len()];
        for (&row, &c) in self.free_rows.iter().zip(coords) {
            v[row] = c;
        }
        v
    }
}

/// Degreewise F_p realization of a ModulePresentation up to an internal
/// cutoff: strand bases and variable-multiplication matrices.
#[derive(Debug)]
pub struct ModuleRealization {
    pub pres: ModulePresentation,
    pub ideg: i64,
    strands: BTreeMap<i64, QuotientStrand>,
    action_cache: Mutex<HashMap<(usize, i64), FMatrix>>,
}

impl ModuleRealization {
    pub fn new(pres: ModulePresentation, ideg: i64) -> Result<Self> {
        let ring = Arc::clone(&pres.ring);
        if let Some(&maxt) = pres.row_twists.iter().max() {
            if ideg < maxt {
                return Err(Error::Truncation(format!(
                    "internal cutoff {ideg} below a generator degree {maxt}"
                )));
            }
        }
        let lo = pres.row_twists.iter().min().copied().unwrap_or(0);
        // relation column degrees
        let col_degs: Vec<i64> = pres
            .relations
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .find(|(_, e)| !e.is_zero())
                    .map(|(r, e)| e.degree().unwrap() + pres.row_twists[r])
                    .unwrap_or(0)
            })
            .collect();
        let mut strands = BTreeMap::new();
        for d in lo..=ideg {
            let ambient = free_strand_basis(&ring, &pres.row_twists, d);
            let index = strand_index(&ambient);
            let mut rel_vecs: Vec<Vec<u64>> = Vec::new();
            for (j, col) in pres.relations.iter().enumerate() {
                for m in ring.degree_basis(d - col_degs[j]) {
                    let mut v = vec![0u64; ambient.len()];
                    for (r, e) in col.iter().enumerate() {
                        if e.is_zero() {
                            continue;
                        }
                        let prod = ring.normal_form(&e.mul_term(1, &m));
                        for (c, mm) in &prod.terms {
                            if let Some(&k) = index.get(&(r, mm.clone())) {
                                v[k] = ring.field.add(v[k], *c);
                            }
                        }
                    }
                    rel_vecs.push(v);
                }
            }
            let rel_basis = Subspace::from_vectors(ring.field, ambient.len(), &rel_vecs);
            let pivot_rows: Vec<usize> = (0..rel_basis.dim())
                .map(|j| {
                    let col = rel_basis.basis.col(j);
                    col.iter().position(|&e| e != 0).expect("nonzero basis column")
                })
                .collect();
            let free_rows: Vec<usize> =
                (0..ambient.len()).filter(|i| !pivot_rows.contains(i)).collect();
            strands.insert(d, QuotientStrand { ambient, index, rel_basis, pivot_rows, free_rows });
        }
        Ok(ModuleRealization { pres, ideg, strands, action_cache: Mutex::new(HashMap::new()) })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.pres.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.pres.row_twists.iter().min().copied().unwrap_or(0)
    }

    pub fn strand(&self, d: i64) -> Option<&QuotientStrand> {
        self.strands.get(&d)
    }

    pub fn dim(&self, d: i64) -> Result<usize> {
        if d > self.ideg {
            return Err(Error::Window(format!(
                "module strand {d} beyond internal cutoff {}",
                self.ideg
            )));
        }
        Ok(self.strands.get(&d).map_or(0, |s| s.dim()))
    }

    /// Matrix of multiplication by a homogeneous polynomial, M_d -> M_{d+deg p}.
    pub fn poly_action(&self, p: &Polynomial, d: i64) -> Result<FMatrix> {
        let ring = self.ring();
        let f = ring.field;
        let pd = p.degree().unwrap_or(0);
        let src_dim = self.dim(d)?;
        let dst_dim = self.dim(d + pd)?;
        let mut out = FMatrix::zero(f, dst_dim, src_dim);
        if src_dim == 0 || dst_dim == 0 || p.is_zero() {
            return Ok(out);
        }
        let src = self.strands.get(&d).unwrap();
        let dst = self.strands.get(&(d + pd)).unwrap();
        for j in 0..src_dim {
            let mut coords = vec![0u64; src_dim];
            coords[j] = 1;
            let ambient = src.lift(&coords);
            let moved = mul_free_vec_by_poly(
                ring,
                &src.ambient,
                &ambient,
                p,
                &dst.index,
                dst.ambient.len(),
            );
            let proj = dst.project(&moved);
            for (k, &c) in proj.iter().enumerate() {
                out.set(k, j, c);
            }
        }
        Ok(out)
    }

    /// Cached multiplication by the variable x_var, M_d -> M_{d+1}.
    pub fn var_action(&self, var: usize, d: i64) -> Result<FMatrix> {
        if let Some(m) = self.action_cache.lock().unwrap().get(&(var, d)) {
            return Ok(m.clone());
        }
        let ring = self.ring();
        let p = Polynomial::monomial(ring.field, 1, Monomial::var(ring.nvars(), var));
        let m = self.poly_action(&p, d)?;
        self.action_cache.lock().unwrap().insert((var, d), m.clone());
        Ok(m)
    }
}

/// Bounded complex of free modules; diffs[i - lo] is d_i: F_i -> F_{i-1}
/// as a rows-by-columns matrix of homogeneous polynomials (empty for i = lo).
#[derive(Debug, Clone)]
pub struct FreeComplex {
    pub ring: Arc<RingPresentation>,
    pub lo: i64,
    pub hi: i64,
    pub modules: Vec<FreeModule>,
    pub diffs: Vec<Vec<Vec<Polynomial>>>,
    pub minimal: bool,
    /// homological cutoff the complex was computed under
    pub hdeg: i64,
    /// internal cutoff: kernels are generated by the next module in all
    /// internal degrees up to this bound
    pub ideg: i64,
}

impl FreeComplex {
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi {
            return 0;
        }
        self.modules[(i - self.lo) as usize].rank()
    }

    pub fn twists(&self, i: i64) -> Vec<i64> {
        if i < self.lo || i > self.hi {
            return Vec::new();
        }
        self.modules[(i - self.lo) as usize].twists.clone()
    }

    /// The matrix of d_i; empty-rows matrix when i = lo or out of range.
    pub fn diff(&self, i: i64) -> Vec<Vec<Polynomial>> {
        if i <= self.lo || i > self.hi {
            return Vec::new();
        }
        self.diffs[(i - self.lo) as usize].clone()
    }

    /// F_p matrix of d_i on the internal-degree-d strands.
    pub fn strand_matrix(&self, i: i64, d: i64) -> FMatrix {
        let src = self.twists(i);
        let dst = self.twists(i - 1);
        let mat = self.diff(i);
        poly_matrix_strand(&self.ring, &dst, &mat, &src, d)
    }

    /// Homological shift: module in degree i becomes module in degree i + s.
    pub fn shift_homological(&self, s: i64) -> FreeComplex {
        let mut c = self.clone();
        c.lo += s;
        c.hi += s;
        c
    }

    /// Verifies d.d = 0 (entries reduce to 0 mod the ring ideal).
    pub fn check_complex(&self) -> Result<()> {
        for i in (self.lo + 2)..=self.hi {
            let a = self.diff(i - 1);
            let b = self.diff(i);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let prod = poly_mat_mul(&self.ring, &a, &b, self.rank(i));
            for row in &prod {
                for e in row {
                    if !e.is_zero() {
                        return Err(Error::Inconsistent(format!(
                            "d.d != 0 at homological degree {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// True when every differential entry lies in the irrelevant ideal.
    pub fn entries_minimal(&self) -> bool {
        self.diffs.iter().all(|mat| {
            mat.iter().all(|row| row.iter().all(|e| e.constant_term() == 0))
        })
    }

    /// Betti table (i, j) -> count of generators of F_i in internal degree j.
    pub fn betti_table(&self) -> Result<BTreeMap<(i64, i64), usize>> {
        if !self.minimal {
            return Err(Error::NotMinimal);
        }
        let mut out = BTreeMap::new();
        for i in self.lo..=self.hi {
            for t in self.twists(i) {
                *out.entry((i, t)).or_insert(0) += 1;
            }
        }
        Ok(out)
    }

    /// JSON dump: twists per degree and sparse entry lists.
    pub fn to_json(&self) -> serde_json::Value {
        let names = &self.ring.var_names;
        let diffs: Vec<serde_json::Value> = (self.lo..=self.hi)
            .map(|i| {
                let mat = self.diff(i);
                let entries: Vec<serde_json::Value> = mat
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| {
                        row.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(
                            move |(c, e)| {
                                serde_json::json!({
                                    "row": r,
                                    "col": c,
                                    "entry": e.render(names),
                                })
                            },
                        )
                    })
                    .collect();
                serde_json::json!({ "degree": i, "entries": entries })
            })
            .collect();
        serde_json::json!({
            "lo": self.lo,
            "hi": self.hi,
            "minimal": self.minimal,
            "window": { "hdeg": self.hdeg, "ideg": self.ideg },
            "twists": (self.lo..=self.hi).map(|i| self.twists(i)).collect::<Vec<_>>(),
            "diffs": diffs,
        })
    }
}

/// Product of polynomial matrices over R (entries in normal form).
pub fn poly_mat_mul(
    ring: &RingPresentation,
    a: &[Vec<Polynomial>],
    b: &[Vec<Polynomial>],
    b_cols: usize,
) -> Vec<Vec<Polynomial>> {
    let f = ring.field;
    let v = ring.nvars();
    let mut out = vec![vec![Polynomial::zero(f, v); b_cols]; a.len()];
    for (r, arow) in a.iter().enumerate() {
        for c in 0..b_cols {
            let mut acc = Polynomial::zero(f, v);
            for (k, brow) in b.iter().enumerate() {
                if !arow[k].is_zero() && !brow[c].is_zero() {
                    acc = acc.add(&arow[k].mul(&brow[c]));
                }
            }
            out[r][c] = ring.normal_form(&acc);
        }
    }
    out
}

/// Degree-s map of complexes; components[i] is F_i -> G_{i+s}.
#[derive(Debug, Clone)]
pub struct ComplexMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub degree: i64,
    pub components: BTreeMap<i64, Vec<Vec<Polynomial>>>,
}

impl ComplexMap {
    pub fn component(&self, i: i64) -> Vec<Vec<Polynomial>> {
        self.components.get(&i).cloned().unwrap_or_default()
    }

    /// Checks d_target . f = (-1)^degree f . d_source degreewise.
    pub fn verify_chain_map(&self) -> Result<()> {
        let ring = &self.source.ring;
        let sign_flip = self.degree.rem_euclid(2) == 1;
        for i in self.source.lo..=self.source.hi {
            let fi = self.component(i);
            let fprev = self.component(i - 1);
            let d_src = self.source.diff(i);
            let d_tgt = self.target.diff(i + self.degree);
            // d_tgt . f_i
            let lhs = if d_tgt.is_empty() || fi.is_empty() {
                Vec::new()
            } else {
                poly_mat_mul(ring, &d_tgt, &fi, self.source.rank(i))
            };
            // f_{i-1} . d_src
            let rhs = if fprev.is_empty() || d_src.is_empty() {
                Vec::new()
            } else {
                poly_mat_mul(ring, &fprev, &d_src, self.source.rank(i))
            };
            let rows = self.target.rank(i - 1 + self.degree);
            let cols = self.source.rank(i);
            for r in 0..rows {
                for c in 0..cols {
                    let f = ring.field;
                    let l = lhs
                        .get(r)
                        .and_then(|row| row.get(c))
                        .cloned()
                        .unwrap_or_else(|| Polynomial::zero(f, ring.nvars()));
                    let mut rr = rhs
                        .get(r)
                        .and_then(|row| row.get(c))
                        .cloned()
                        .unwrap_or_else(|| Polynomial::zero(f, ring.nvars()));
                    if sign_flip {
                        rr = rr.scale(f.neg(1));
                    }
                    if !ring.normal_form(&l.sub(&rr)).is_zero() {
                        return Err(Error::NotChainMap(format!(
                            "commutation fails at degree {i} entry ({r},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Default internal cutoff: conservative bound so every strand of F_{<=D}
/// is complete.
pub fn default_internal_cap(ring: &RingPresentation, d: i64) -> i64 {
    let maxdeg = ring
        .ideal_gens
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(1);
    d * (1 + maxdeg)
}

/// A resolution together with its augmentation data: the realization of M
/// and, per generator of F_0, (degree, quotient coordinates in M).
#[derive(Debug)]
pub struct Augmented {
    pub complex: FreeComplex,
    pub realization: ModuleRealization,
    pub gens: Vec<(i64, Vec<u64>)>,
}

/// Minimal free resolution of M to homological degree D, complete in all
/// internal degrees <= J.
pub fn minimal_free_resolution(
    m: &ModulePresentation,
    d_cut: i64,
    j_cut: i64,
) -> Result<FreeComplex> {
    Ok(resolve_with_augmentation(m, d_cut, j_cut)?.complex)
}

pub fn resolve_with_augmentation(
    m: &ModulePresentation,
    d_cut: i64,
    j_cut: i64,
) -> Result<Augmented> {
    if d_cut < 0 {
        return Err(Error::Window("homological cutoff must be >= 0".into()));
    }
    let ring = Arc::clone(&m.ring);
    let field = ring.field;
    let real = ModuleRealization::new(m.clone(), j_cut)?;

    // F_0: minimal generators of M, degree by degree (complement of R_1 M).
    let lo_deg = real.min_degree();
    let mut gens: Vec<(i64, Vec<u64>)> = Vec::new();
    for d in lo_deg..=j_cut {
        let dim_d = real.dim(d)?;
        if dim_d == 0 {
            continue;
        }
        let mut span = IncrementalSpan::new(field, dim_d);
        if d > lo_deg && real.dim(d - 1)? > 0 {
            for var in 0..ring.nvars() {
                let a = real.var_action(var, d - 1)?;
                for c in 0..a.cols {
                    span.insert(&a.col(c));
                }
            }
        }
        for idx in 0..dim_d {
            let mut e = vec![0u64; dim_d];
            e[idx] = 1;
            if span.insert(&e) {
                gens.push((d, e));
            }
        }
    }

    let mut modules = vec![FreeModule { twists: gens.iter().map(|(d, _)| *d).collect() }];
    let mut diffs: Vec<Vec<Vec<Polynomial>>> = vec![Vec::new()];

    // ambient lifts of the chosen generators, for the augmentation strands
    let gen_lifts: Vec<Vec<u64>> = gens
        .iter()
        .map(|(d, coords)| real.strand(*d).unwrap().lift(coords))
        .collect();

    for step in 1..=d_cut {
        let cur_twists = modules[(step - 1) as usize].twists.clone();
        if cur_twists.is_empty() {
            modules.push(FreeModule { twists: Vec::new() });
            diffs.push(Vec::new());
            continue;
        }
        let lowest = *cur_twists.iter().min().unwrap();
        // the map out of F_{step-1}: the augmentation for step 1, else d_{step-1}
        let out_strand = |d: i64| -> Result<FMatrix> {
            if step == 1 {
                let sbasis = free_strand_basis(&ring, &cur_twists, d);
                let tgt = match real.strand(d) {
                    Some(s) => s,
                    None => return Ok(FMatrix::zero(field, 0, sbasis.len())),
                };
                let mut out = FMatrix::zero(field, tgt.dim(), sbasis.len());
                for (j, (g, mono)) in sbasis.iter().enumerate() {
                    let src_strand = real.strand(gens[*g].0).unwrap();
                    let moved = mul_free_vec_by_poly(
                        &ring,
                        &src_strand.ambient,
                        &gen_lifts[*g],
                        &Polynomial::monomial(field, 1, mono.clone()),
                        &tgt.index,
                        tgt.ambient.len(),
                    );
                    for (k, &c) in tgt.project(&moved).iter().enumerate() {
                        out.set(k, j, c);
                    }
                }
                Ok(out)
            } else {
                Ok(poly_matrix_strand(
                    &ring,
                    &modules[(step - 2) as usize].twists,
                    &diffs[(step - 1) as usize],
                    &cur_twists,
                    d,
                ))
            }
        };

        let mut new_gens: Vec<(i64, Vec<u64>)> = Vec::new();
        let mut gen_strands: Vec<Vec<(usize, Monomial)>> = Vec::new();
        let mut prev: Option<(i64, Subspace, Vec<(usize, Monomial)>)> = None;
        for d in lowest..=j_cut {
            let sbasis = free_strand_basis(&ring, &cur_twists, d);
            if sbasis.is_empty() {
                prev = None;
                continue;
            }
            let ker = out_strand(d)?.kernel();
            let mut span = IncrementalSpan::new(field, sbasis.len());
            if let Some((pd, pker, pbasis)) = &prev {
                if *pd == d - 1 && pker.dim() > 0 {
                    let idx = strand_index(&sbasis);
                    for bv in pker.basis_vectors() {
                        for var in 0..ring.nvars() {
                            let p = Polynomial::monomial(
                                field,
                                1,
                                Monomial::var(ring.nvars(), var),
                            );
                            let moved = mul_free_vec_by_poly(
                                &ring, pbasis, &bv, &p, &idx, sbasis.len(),
                            );
                            span.insert(&moved);
                        }
                    }
                }
            }
            for kv in ker.basis_vectors() {
                if span.insert(&kv) {
                    new_gens.push((d, kv));
                    gen_strands.push(sbasis.clone());
                }
            }
            prev = Some((d, ker, sbasis));
        }

        // assemble the polynomial matrix of d_step
        let zero = Polynomial::zero(field, ring.nvars());
        let mut mat = vec![vec![zero.clone(); new_gens.len()]; cur_twists.len()];
        for (col, ((_, kv), sbasis)) in new_gens.iter().zip(&gen_strands).enumerate() {
            for (pos, &c) in kv.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (r, ref mono) = sbasis[pos];
                mat[r][col] =
                    mat[r][col].add(&Polynomial::monomial(field, c, mono.clone()));
            }
        }
        modules.push(FreeModule { twists: new_gens.iter().map(|(d, _)| *d).collect() });
        diffs.push(mat);
    }

    let mut complex = FreeComplex {
        ring,
        lo: 0,
        hi: d_cut,
        modules,
        diffs,
        minimal: false,
        hdeg: d_cut,
        ideg: j_cut,
    };
    complex.minimal = complex.entries_minimal();
    if !complex.minimal {
        return Err(Error::Inconsistent(
            "resolution engine produced a unit differential entry".into(),
        ));
    }
    complex.check_complex()?;
    Ok(Augmented { complex, realization: real, gens })
}

/// Strand matrix of the augmentation F_0 -> M in internal degree d.
pub fn augmentation_strand(aug: &Augmented, d: i64) -> Result<FMatrix> {
    let ring = &aug.complex.ring;
    let field = ring.field;
    let twists = aug.complex.twists(0);
    let sbasis = free_strand_basis(ring, &twists, d);
    let Some(tgt) = aug.realization.strand(d) else {
        return Ok(FMatrix::zero(field, 0, sbasis.len()));
    };
    let mut out = FMatrix::zero(field, tgt.dim(), sbasis.len());
    for (j, (g, mono)) in sbasis.iter().enumerate() {
        let (gdeg, coords) = &aug.gens[*g];
        let src_strand = aug.realization.strand(*gdeg).unwrap();
        let lifted = src_strand.lift(coords);
        let moved = mul_free_vec_by_poly(
            ring,
            &src_strand.ambient,
            &lifted,
            &Polynomial::monomial(field, 1, mono.clone()),
            &tgt.index,
            tgt.ambient.len(),
        );
        for (k, &c) in tgt.project(&moved).iter().enumerate() {
            out.set(k, j, c);
        }
    }
    Ok(out)
}

/// Cached minimal resolution of k = R/m.
pub fn resolution_of_k(
    ring: &Arc<RingPresentation>,
    d_cut: i64,
    j_cut: i64,
) -> Result<Arc<FreeComplex>> {
    static CACHE: Mutex<Option<HashMap<(String, i64, i64), Arc<FreeComplex>>>> =
        Mutex::new(None);
    let sig = format!(
        "{}|{}|{}",
        ring.field.p(),
        ring.var_names.join(","),
        ring.gb()
            .iter()
            .map(|g| g.render(&ring.var_names))
            .collect::<Vec<_>>()
            .join(";")
    );
    let key = (sig, d_cut, j_cut);
    if let Some(c) = CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return Ok(Arc::clone(c));
    }
    let res = Arc::new(minimal_free_resolution(
        &ModulePresentation::residue_field(ring),
        d_cut,
        j_cut,
    )?);
    CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, Arc::clone(&res));
    Ok(res)
}

/// Presentation of the n-th syzygy module: generators = twists of F_n,
/// relations = columns of d_{n+1}.
pub fn syzygy_presentation(
    m: &ModulePresentation,
    n: i64,
    j_cut: i64,
) -> Result<ModulePresentation> {
    if n < 0 {
        return Err(Error::Window("syzygy index must be >= 0".into()));
    }
    let res = minimal_free_resolution(m, n + 1, j_cut)?;
    let twists = res.twists(n);
    let mat = res.diff(n + 1);
    let cols = res.rank(n + 1);
    let relations: Vec<Vec<Polynomial>> = (0..cols)
        .map(|c| mat.iter().map(|row| row[c].clone()).collect())
        .collect();
    ModulePresentation::new(Arc::clone(&m.ring), twists, relations)
}

/// Hard truncation F_{>=n} (indices unshifted) with the canonical projection
/// F -> F_{>=n}: identity in degrees >= n, zero below.
pub fn truncation_with_projection(
    f: &FreeComplex,
    n: i64,
) -> Result<(FreeComplex, ComplexMap)> {
    if n < f.lo {
        return Err(Error::Window(format!("truncation index {n} below lo {}", f.lo)));
    }
    let trunc = if n > f.hi {
        FreeComplex {
            ring: Arc::clone(&f.ring),
            lo: n,
            hi: n - 1,
            modules: Vec::new(),
            diffs: Vec::new(),
            minimal: f.minimal,
            hdeg: f.hdeg,
            ideg: f.ideg,
        }
    } else {
        let start = (n - f.lo) as usize;
        let mut diffs: Vec<Vec<Vec<Polynomial>>> = f.diffs[start..].to_vec();
        if let Some(first) = diffs.first_mut() {
            *first = Vec::new();
        }
        FreeComplex {
            ring: Arc::clone(&f.ring),
            lo: n,
            hi: f.hi,
            modules: f.modules[start..].to_vec(),
            diffs,
            minimal: f.minimal,
            hdeg: f.hdeg,
            ideg: f.ideg,
        }
    };
    let mut components = BTreeMap::new();
    for i in n..=f.hi {
        let r = f.rank(i);
        let mut mat = vec![vec![Polynomial::zero(f.ring.field, f.ring.nvars()); r]; r];
        for (j, row) in mat.iter_mut().enumerate() {
            row[j] = Polynomial::constant(f.ring.field, f.ring.nvars(), 1);
        }
        components.insert(i, mat);
    }
    let proj = ComplexMap { source: f.clone(), target: trunc.clone(), degree: 0, components };
    Ok((trunc, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &RingPresentation, s: &str) -> Polynomial {
        Polynomial::parse(ring.field, &ring.var_names, s).unwrap()
    }

    #[test]
    fn hypersurface_k_is_periodic() {
        // R = F_101[x]/(x^2): F_i = R(-i), d_i = (x)
        let r = RingPresentation::parse(101, "x", &["x^2"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 10, default_internal_cap(&r, 10)).unwrap();
        for i in 0..=10 {
            assert_eq!(res.twists(i), vec![i], "twist at {i}");
        }
        for i in 1..=10 {
            let d = res.diff(i);
            assert_eq!(d.len(), 1);
            assert_eq!(d[0][0].render(&r.var_names), "x");
        }
        let betti = res.betti_table().unwrap();
        for i in 0..=10 {
            assert_eq!(betti.get(&(i, i)), Some(&1));
        }
        assert_eq!(betti.len(), 11);
    }

    #[test]
    fn golod_k_doubles() {
        // R = F_101[x,y]/(x,y)^2: rank F_i = 2^i, twists all i
        let r = RingPresentation::parse(101, "x y", &["x^2", "x*y", "y^2"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 6, default_internal_cap(&r, 6)).unwrap();
        for i in 0..=6 {
            assert_eq!(res.rank(i), 1usize << i, "rank at {i}");
            assert!(res.twists(i).iter().all(|&t| t == i));
        }
    }

    #[test]
    fn regular_ring_koszul() {
        // R = F_101[x,y]: Koszul resolution of k, ranks 1,2,1 then 0
        let r = RingPresentation::parse(101, "x y", &[]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 5, 12).unwrap();
        assert_eq!(
            (0..=5).map(|i| res.rank(i)).collect::<Vec<_>>(),
            vec![1, 2, 1, 0, 0, 0]
        );
        assert_eq!(res.twists(1), vec![1, 1]);
        assert_eq!(res.twists(2), vec![2]);
        res.check_complex().unwrap();
    }

    #[test]
    fn hypersurface_xy_betti_pattern() {
        // k over F_101[x,y]/(xy): beta = 1, 2, 2, 2, ...
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 5, default_internal_cap(&r, 5)).unwrap();
        assert_eq!(
            (0..=5).map(|i| res.rank(i)).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 2, 2]
        );
    }

    #[test]
    fn free_module_resolves_to_itself() {
        let r = RingPresentation::parse(101, "x", &["x^2"]).unwrap();
        let m = ModulePresentation::free_rank_one(&r);
        let res = minimal_free_resolution(&m, 4, 8).unwrap();
        assert_eq!(
            (0..=4).map(|i| res.rank(i)).collect::<Vec<_>>(),
            vec![1, 0, 0, 0, 0]
        );
    }

    #[test]
    fn redundant_generator_pruned() {
        // cover R + R(-1) with relation x e0 = e1: the module is free of rank 1
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let m = ModulePresentation::new(
            Arc::clone(&r),
            vec![0, 1],
            vec![vec![poly(&r, "x"), poly(&r, "100")]],
        )
        .unwrap();
        let res = minimal_free_resolution(&m, 3, 8).unwrap();
        assert_eq!(res.rank(0), 1);
        assert_eq!(res.rank(1), 0);
    }

    #[test]
    fn syzygy_of_k_over_hypersurface() {
        // Omega^1 k = k(-1) over F_101[x]/(x^2)
        let r = RingPresentation::parse(101, "x", &["x^2"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let s = syzygy_presentation(&k, 1, 10).unwrap();
        assert_eq!(s.row_twists, vec![1]);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.relations[0][0].render(&r.var_names), "x");
    }

    #[test]
    fn syzygy_betti_shift() {
        // beta_i(Omega^1 k) = beta_{i+1}(k) over F_101[x,y]/(xy)
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let cap = default_internal_cap(&r, 5);
        let resk = minimal_free_resolution(&k, 5, cap).unwrap();
        let omega = syzygy_presentation(&k, 1, cap).unwrap();
        let reso = minimal_free_resolution(&omega, 4, cap).unwrap();
        for i in 0..=4 {
            assert_eq!(reso.rank(i), resk.rank(i + 1), "shift at {i}");
        }
    }

    #[test]
    fn cutoffs_agree_on_overlap() {
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let small = minimal_free_resolution(&k, 3, default_internal_cap(&r, 3)).unwrap();
        let large = minimal_free_resolution(&k, 6, default_internal_cap(&r, 6)).unwrap();
        for i in 0..=3 {
            assert_eq!(small.twists(i), large.twists(i));
            assert_eq!(small.diff(i), large.diff(i));
        }
    }

    #[test]
    fn betti_requires_minimal() {
        let r = RingPresentation::parse(101, "x", &["x^2"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let mut res = minimal_free_resolution(&k, 2, 6).unwrap();
        res.minimal = false;
        assert!(matches!(res.betti_table(), Err(Error::NotMinimal)));
    }

    #[test]
    fn realization_dims_match_hilbert() {
        let r = RingPresentation::parse(101, "x y", &["x*y"]).unwrap();
        let m = ModulePresentation::cyclic(&r, &[poly(&r, "x^2")]).unwrap();
        let real = ModuleRealization::new(m, 6).unwrap();
        // R/(x^2, xy): dims 1, 2, 1, 1, ... (x^2, xy dead; y^d survives)
        assert_eq!(real.dim(0).unwrap(), 1);
        assert_eq!(real.dim(1).unwrap(), 2);
        assert_eq!(real.dim(2).unwrap(), 1);
        assert_eq!(real.dim(3).unwrap(), 1);
        assert!(real.dim(7).is_err());
    }

    #[test]
    fn truncation_and_projection() {
        let r = RingPresentation::parse(101, "x y", &[]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 3, 8).unwrap();
        let (trunc, proj) = truncation_with_projection(&res, 1).unwrap();
        assert_eq!(trunc.lo, 1);
        assert_eq!(trunc.rank(0), 0);
        assert_eq!(trunc.rank(1), 2);
        assert_eq!(trunc.rank(2), 1);
        proj.verify_chain_map().unwrap();

        let (all, id) = truncation_with_projection(&res, 0).unwrap();
        assert_eq!(all.rank(0), res.rank(0));
        id.verify_chain_map().unwrap();

        let (empty, z) = truncation_with_projection(&res, res.hi + 1).unwrap();
        assert_eq!(empty.rank(res.hi + 1), 0);
        z.verify_chain_map().unwrap();
    }

    #[test]
    fn strand_matrix_squares_to_zero() {
        let r = RingPresentation::parse(101, "x y", &["x^2", "x*y", "y^2"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 4, 8).unwrap();
        for i in 2..=4 {
            for d in 0..=6 {
                let a = res.strand_matrix(i - 1, d);
                let b = res.strand_matrix(i, d);
                if a.cols == b.rows && a.rows > 0 && b.cols > 0 {
                    assert!(a.mat_mul(&b).is_zero(), "strand d.d at ({i},{d})");
                }
            }
        }
    }
}
