//! Brute-force flag enumeration over a prime field and convolution by counting.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|k| k * k <= p).all(|k| p % k != 0);
        if prime {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn inv(&self, x: u64) -> u64 {
        // Fermat
        let mut r = 1u64;
        let mut b = x % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

/// Enumeration ceilings. Raising them is allowed but slow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub max_d: usize,
    pub max_p: u64,
    pub max_n: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_d: 3, max_p: 7, max_n: 4 }
    }
}

impl Guards {
    pub fn raised() -> Self {
        Guards { max_d: 4, max_p: 11, max_n: 5 }
    }
}

/// Subspace of `F_p^d` in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub ambient: usize,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn rref(field: PrimeField, rows: &[Vec<u64>], d: usize) -> Vec<Vec<u64>> {
    let p = field.p;
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut out_rows = 0;
    for col in 0..d {
        let Some(piv) = (out_rows..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(out_rows, piv);
        let inv = field.inv(m[out_rows][col]);
        for x in m[out_rows].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != out_rows && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..d {
                    m[r][c] = (m[r][c] + p * p - f * m[out_rows][c] % p) % p;
                }
            }
        }
        out_rows += 1;
    }
    m.truncate(out_rows);
    m
}

/// All `k`-dimensional subspaces of `F_p^d`, in canonical order.
pub fn enum_subspaces(field: PrimeField, d: usize, k: usize) -> Result<Vec<Subspace>> {
    if d > 4 || k > d {
        return Err(Error::GuardExceeded(format!("enum_subspaces needs k <= d <= 4 (d={d}, k={k})")));
    }
    let p = field.p;
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = p.pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = x % p;
                x /= p;
            }
            out.push(Subspace { basis: rows, ambient: d });
        }
    }
    Ok(out)
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

/// All subspaces of `F_p^d` with precomputed intersection and sum tables.
pub struct SubspaceLattice {
    field: PrimeField,
    d: usize,
    subs: Vec<Subspace>,
    dims: Vec<usize>,
    index: HashMap<Vec<Vec<u64>>, usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    zero: usize,
    whole: usize,
}

impl SubspaceLattice {
    pub fn new(field: PrimeField, d: usize, guards: &Guards) -> Result<Self> {
        if d > guards.max_d || field.p > guards.max_p {
            return Err(Error::GuardExceeded(format!(
                "d={d}, p={} exceeds d <= {}, p <= {}",
                field.p, guards.max_d, guards.max_p
            )));
        }
        let mut subs = Vec::new();
        for k in 0..=d {
            subs.extend(enum_subspaces(field, d, k)?);
        }
        let dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
        let index: HashMap<Vec<Vec<u64>>, usize> =
            subs.iter().enumerate().map(|(i, s)| (s.basis.clone(), i)).collect();
        let n = subs.len();
        let mut lat = SubspaceLattice {
            field,
            d,
            zero: 0,
            whole: n - 1,
            subs,
            dims,
            index,
            meet: vec![0; n * n],
            join: vec![0; n * n],
        };
        for a in 0..n {
            for b in a..n {
                let mut rows = lat.subs[a].basis.clone();
                rows.extend(lat.subs[b].basis.iter().cloned());
                let j = lat.lookup(&rows);
                let m = lat.lookup_meet(a, b);
                lat.join[a * n + b] = j;
                lat.join[b * n + a] = j;
                lat.meet[a * n + b] = m;
                lat.meet[b * n + a] = m;
            }
        }
        Ok(lat)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn subspace(&self, id: usize) -> &Subspace {
        &self.subs[id]
    }

    pub fn dim(&self, id: usize) -> usize {
        self.dims[id]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn whole(&self) -> usize {
        self.whole
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.subs.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.subs.len() + b]
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.join(big, small) == big
    }

    /// Id of the span of the given row vectors.
    pub fn lookup(&self, rows: &[Vec<u64>]) -> usize {
        let r = rref(self.field, rows, self.d);
        self.index[&r]
    }

    fn lookup_meet(&self, a: usize, b: usize) -> usize {
        // dim(A ∩ B) = dim A + dim B - dim(A + B); find the kernel of [A; -B] explicitly.
        let (ra, rb) = (&self.subs[a].basis, &self.subs[b].basis);
        if ra.is_empty() || rb.is_empty() {
            return self.zero;
        }
        let p = self.field.p;
        // vectors x = sum c_i a_i lying in B: solve via augmented elimination on [A | I] against B.
        let ka = ra.len();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (i, r) in ra.iter().enumerate() {
            let mut row = r.clone();
            row.extend((0..ka).map(|j| u64::from(i == j)));
            rows.push(row);
        }
        // reduce each A-row modulo B (B is in RREF)
        for row in rows.iter_mut() {
            for brow in rb {
                let piv = brow.iter().position(|&x| x != 0).unwrap();
                let f = row[piv];
                if f != 0 {
                    for c in 0..self.d {
                        row[c] = (row[c] + p * p - f * brow[c] % p) % p;
                    }
                }
            }
        }
        // combinations of rows whose first d coordinates vanish give A ∩ B
        let full = rref(self.field, &rows, self.d + ka);
        let mut inter = Vec::new();
        for row in full {
            if row[..self.d].iter().all(|&x| x == 0) {
                let coeffs = &row[self.d..];
                let mut v = vec![0u64; self.d];
                for (i, &c) in coeffs.iter().enumerate() {
                    for k in 0..self.d {
                        v[k] = (v[k] + c * ra[i][k]) % p;
                    }
                }
                inter.push(v);
            }
        }
        self.lookup(&inter)
    }

    /// Image of a subspace under `x -> x g`.
    pub fn act(&self, g: &[Vec<u64>], id: usize) -> usize {
        let p = self.field.p;
        let rows: Vec<Vec<u64>> = self.subs[id]
            .basis
            .iter()
            .map(|x| (0..self.d).map(|j| (0..self.d).map(|k| x[k] * g[k][j]).sum::<u64>() % p).collect())
            .collect();
        self.lookup(&rows)
    }

    /// Flags `V_1 ⊆ ... ⊆ V_n = F^d` as lists of subspace ids.
    pub fn enum_flags_x(&self, n: usize, guards: &Guards) -> Result<Vec<Vec<usize>>> {
        if n > guards.max_n || n == 0 {
            return Err(Error::GuardExceeded(format!("n={n} outside 1..={}", guards.max_n)));
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_chains(n, self.zero, &mut cur, &mut out, false);
        Ok(out)
    }

    /// Complete flags `F_1 ⊂ ... ⊂ F_d` with `dim F_i = i`.
    pub fn enum_flags_y(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_chains(self.d, self.zero, &mut cur, &mut out, true);
        out
    }

    fn extend_chains(&self, n: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, strict: bool) {
        if cur.len() + 1 == n {
            cur.push(self.whole);
            if !strict || self.dims[prev] + 1 == self.d {
                out.push(cur.clone());
            }
            cur.pop();
            return;
        }
        for id in 0..self.subs.len() {
            let ok = if strict { self.dims[id] == self.dims[prev] + 1 } else { true };
            if ok && self.contains(id, prev) {
                cur.push(id);
                self.extend_chains(n, id, cur, out, strict);
                cur.pop();
            }
        }
    }

    /// Step dimensions `|V_i / V_{i-1}|`.
    pub fn step_dims(&self, flag: &[usize]) -> Vec<i64> {
        let mut prev = 0;
        flag.iter()
            .map(|&id| {
                let x = self.dims[id] as i64 - prev;
                prev = self.dims[id] as i64;
                x
            })
            .collect()
    }

    /// Relative-position matrix: entry (i,j) is
    /// `dim(V_{i-1} + V_i ∩ V'_j) - dim(V_{i-1} + V_i ∩ V'_{j-1})`.
    pub fn orbit_matrix(&self, f1: &[usize], f2: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(f1.len(), f2.len());
        for i in 0..f1.len() {
            let prev_i = if i == 0 { self.zero } else { f1[i - 1] };
            let mut last = self.dims[prev_i] as i64;
            for j in 0..f2.len() {
                let x = self.join(prev_i, self.meet(f1[i], f2[j]));
                let dx = self.dims[x] as i64;
                m.set(i, j, dx - last);
                last = dx;
            }
        }
        m
    }

    /// Counts `#{V'' in mid : pos(V,V'') = B, pos(V'',V') = A}` for one fixed `V`
    /// per output type `C = pos(V,V')`; a second representative is checked when present.
    pub fn convolve(
        &self,
        left: &[Vec<usize>],
        mid: &[Vec<usize>],
        right: &[Vec<usize>],
        b: &IntMatrix,
        a: &IntMatrix,
    ) -> Result<BTreeMap<IntMatrix, i64>> {
        if b.co() != a.ro() {
            return Err(Error::Incompatible(format!("co(B) = {:?} but ro(A) = {:?}", b.co(), a.ro())));
        }
        let v = left
            .iter()
            .find(|f| self.step_dims(f) == b.ro())
            .ok_or_else(|| Error::Incompatible(format!("no flag of type {:?}", b.ro())))?;
        let mids: Vec<&Vec<usize>> = mid.iter().filter(|f| &self.orbit_matrix(v, f) == b).collect();
        if mids.is_empty() {
            return Err(Error::Incompatible(format!("orbit type {b} not realized")));
        }
        let target_co = a.co();
        let mut groups: BTreeMap<IntMatrix, Vec<&Vec<usize>>> = BTreeMap::new();
        for w in right.iter().filter(|f| self.step_dims(f) == target_co) {
            groups.entry(self.orbit_matrix(v, w)).or_default().push(w);
        }
        let mut out = BTreeMap::new();
        for (c, reps) in groups {
            let count = |w: &Vec<usize>| mids.iter().filter(|m| &self.orbit_matrix(m, w) == a).count() as i64;
            let n1 = count(reps[0]);
            if let Some(w2) = reps.get(1) {
                let n2 = count(w2);
                if n1 != n2 {
                    return Err(Error::Incompatible(format!("count for {c} depends on representative ({n1} vs {n2})")));
                }
            }
            if n1 != 0 {
                out.insert(c, n1);
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper over the three flag kinds of one ambient space.
pub struct FlagOracle {
    pub lattice: SubspaceLattice,
    pub n: usize,
    pub x: Vec<Vec<usize>>,
    pub y: Vec<Vec<usize>>,
}

impl FlagOracle {
    pub fn new(p: u64, n: usize, d: usize, guards: &Guards) -> Result<Self> {
        let lattice = SubspaceLattice::new(PrimeField::new(p)?, d, guards)?;
        let x = lattice.enum_flags_x(n, guards)?;
        let y = lattice.enum_flags_y();
        Ok(FlagOracle { lattice, n, x, y })
    }

    /// `X x X x X` convolution.
    pub fn convolve_count(&self, b: &IntMatrix, a: &IntMatrix) -> Result<BTreeMap<IntMatrix, i64>> {
        self.lattice.convolve(&self.x, &self.x, &self.x, b, a)
    }

    /// `X x X x Y`: action of the Schur side on `A_G(X x Y)`.
    pub fn convolve_xxy(&self, b: &IntMatrix, a: &IntMatrix) -> Result<BTreeMap<IntMatrix, i64>> {
        self.lattice.convolve(&self.x, &self.x, &self.y, b, a)
    }

    /// `X x Y x Y`: right Hecke action on `A_G(X x Y)`.
    pub fn convolve_xyy(&self, b: &IntMatrix, a: &IntMatrix) -> Result<BTreeMap<IntMatrix, i64>> {
        self.lattice.convolve(&self.x, &self.y, &self.y, b, a)
    }

    /// `Y x Y x Y`: the Hecke algebra itself.
    pub fn convolve_yyy(&self, b: &IntMatrix, a: &IntMatrix) -> Result<BTreeMap<IntMatrix, i64>> {
        self.lattice.convolve(&self.y, &self.y, &self.y, b, a)
    }

    pub fn orbit_matrix_xx(&self, v: &[usize], w: &[usize]) -> IntMatrix {
        self.lattice.orbit_matrix(v, w)
    }

    pub fn orbit_matrix_xy(&self, v: &[usize], f: &[usize]) -> IntMatrix {
        self.lattice.orbit_matrix(v, f)
    }

    pub fn orbit_matrix_yy(&self, f: &[usize], g: &[usize]) -> IntMatrix {
        self.lattice.orbit_matrix(f, g)
    }

    /// Distinct `X x Y` orbit types (the set Π); `G` is transitive on `Y`, so one `F` suffices.
    pub fn xy_types(&self) -> Vec<IntMatrix> {
        let f = &self.y[0];
        let mut s: Vec<IntMatrix> = self.x.iter().map(|v| self.lattice.orbit_matrix(v, f)).collect();
        s.sort();
        s.dedup();
        s
    }

    /// Distinct `Y x Y` orbit types (the set Σ).
    pub fn yy_types(&self) -> Vec<IntMatrix> {
        let f = &self.y[0];
        let mut s: Vec<IntMatrix> = self.y.iter().map(|g| self.lattice.orbit_matrix(f, g)).collect();
        s.sort();
        s.dedup();
        s
    }

    /// Number of `V'` with `pos(V, V') = A` for a fixed `V` of type `ro(A)`.
    pub fn fibre_size(&self, a: &IntMatrix) -> usize {
        let Some(v) = self.x.iter().find(|f| self.lattice.step_dims(f) == a.ro()) else { return 0 };
        self.x.iter().filter(|w| &self.lattice.orbit_matrix(v, w) == a).count()
    }

    /// A uniformly random invertible matrix over the field.
    pub fn random_invertible(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        let d = self.lattice.ambient();
        let p = self.lattice.field().p();
        loop {
            let g: Vec<Vec<u64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..p)).collect()).collect();
            if rref(self.lattice.field(), &g, d).len() == d {
                return g;
            }
        }
    }

    pub fn act_flag(&self, g: &[Vec<u64>], flag: &[usize]) -> Vec<usize> {
        flag.iter().map(|&id| self.lattice.act(g, id)).collect()
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(dimStab, dimOrbit, d(A) - r(A))`.
pub fn dim_stats(a: &IntMatrix) -> (i64, i64, i64) {
    let (r, c) = (a.rows(), a.cols());
    let (mut stab, mut orbit, mut dr) = (0, 0, 0);
    for i in 0..r {
        for j in 0..c {
            for k in 0..r {
                for l in 0..c {
                    let x = a.get(i, j) * a.get(k, l);
                    if i >= k && j >= l {
                        stab += x;
                    } else {
                        orbit += x;
                    }
                    if i >= k && j < l {
                        dr += x;
                    }
                }
            }
        }
    }
    (stab, orbit, dr)
}

/// `d(A) - r(A) = Σ_{i≥k, j<l} a_ij a_kl`.
pub fn d_minus_r(a: &IntMatrix) -> i64 {
    dim_stats(a).2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enum_subspaces(f3, 2, 1).unwrap().len(), 4);
        assert_eq!(enum_subspaces(f3, 2, 0).unwrap().len(), 1);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(enum_subspaces(f5, 3, 1).unwrap().len(), 31);
        assert!(enum_subspaces(f3, 5, 1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_err());
    }

    #[test]
    fn flag_counts() {
        let g = Guards::default();
        let o = FlagOracle::new(3, 1, 2, &g).unwrap();
        assert_eq!(o.y.len(), 4);
        assert_eq!(o.x.len(), 1);
        let o3 = FlagOracle::new(3, 2, 3, &g).unwrap();
        assert_eq!(o3.y.len(), 52);
    }

    #[test]
    fn orbit_matrix_examples() {
        let g = Guards::default();
        let o = FlagOracle::new(3, 2, 1, &g).unwrap();
        let lat = &o.lattice;
        let v = vec![lat.whole(), lat.whole()];
        let w = vec![lat.zero(), lat.whole()];
        assert_eq!(o.orbit_matrix_xx(&v, &w), IntMatrix::unit(2, 2, 0, 1));
        assert_eq!(o.orbit_matrix_xx(&v, &v), IntMatrix::diag(&[1, 0]));
    }

    #[test]
    fn dim_stats_examples() {
        assert_eq!(dim_stats(&IntMatrix::diag(&[1, 1])).2, 0);
        assert_eq!(dim_stats(&IntMatrix::unit(2, 2, 0, 1)).2, 0);
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let (s, o, dr) = dim_stats(&a);
        assert_eq!(dr, 1);
        assert_eq!(s + o, 4);
    }

    #[test]
    fn convolve_examples() {
        let g = Guards::default();
        let o = FlagOracle::new(3, 2, 1, &g).unwrap();
        let b = IntMatrix::unit(2, 2, 0, 1);
        let a = IntMatrix::diag(&[0, 1]);
        let out = o.convolve_count(&b, &a).unwrap();
        assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![(b.clone(), 1)]);
        let d = IntMatrix::diag(&[1, 0]);
        assert_eq!(o.convolve_count(&d, &d).unwrap().get(&d), Some(&1));
        assert!(o.convolve_count(&b, &IntMatrix::diag(&[1, 0])).is_err());
    }
}
