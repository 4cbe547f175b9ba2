//! Dense linear algebra over a prime field `F_p`.

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Row-reduced span of vectors in `F_p^n`, remembering for each basis row
/// its expression in terms of the inserted generators.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<u32>>,
    generators: usize,
}

impl Span {
    pub fn new(p: u32, n: usize) -> Self {
        Span { p, n, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), generators: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    fn axpy(&self, y: &mut [u32], a: u32, x: &[u32]) {
        let p = self.p as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((*yi as u64 + p * p - a as u64 * xi as u64) % p) as u32;
            }
        }
    }

    /// Reduces `v` modulo the span; returns the residual and the combination of
    /// generators that was subtracted.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut r: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        let mut comb = vec![0u32; self.generators];
        for (k, &pc) in self.pivots.iter().enumerate() {
            let a = r[pc];
            if a != 0 {
                self.axpy(&mut r, a, &self.rows[k]);
                let neg = (self.p - a) % self.p;
                let ck = &self.combos[k];
                let p = self.p as u64;
                for (ci, &x) in comb.iter_mut().zip(ck) {
                    *ci = ((*ci as u64 + neg as u64 * x as u64) % p) as u32;
                }
            }
        }
        // comb currently holds -coefficients; r = v + sum comb_i g_i
        let p = self.p;
        for c in comb.iter_mut() {
            *c = (p - *c) % p;
        }
        (r, comb)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Adds a generator; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let gi = self.generators;
        self.generators += 1;
        for c in self.combos.iter_mut() {
            c.push(0);
        }
        let (mut r, mut comb) = self.reduce(v);
        comb.resize(self.generators, 0);
        // r = v - sum comb g  => combination for r is e_gi - comb
        let p = self.p;
        let mut rc: Vec<u32> = comb.iter().map(|&c| (p - c) % p).collect();
        rc[gi] = (rc[gi] + 1) % p;
        let Some(pc) = r.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(r[pc], p);
        for x in r.iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for x in rc.iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        // keep fully reduced: clear column pc in existing rows
        for k in 0..self.rows.len() {
            let a = self.rows[k][pc];
            if a != 0 {
                let row = r.clone();
                let mut existing = std::mem::take(&mut self.rows[k]);
                self.axpy(&mut existing, a, &row);
                self.rows[k] = existing;
                let mut ck = std::mem::take(&mut self.combos[k]);
                self.axpy(&mut ck, a, &rc);
                self.combos[k] = ck;
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        self.combos.insert(pos, rc);
        true
    }

    /// A functional vanishing on the span with `phi(v) != 0`, if `v` is outside.
    pub fn separating_functional(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, _) = self.reduce(v);
        let j = r.iter().position(|&x| x != 0)?;
        let p = self.p;
        let mut phi = vec![0u32; self.n];
        phi[j] = 1;
        for (k, &pc) in self.pivots.iter().enumerate() {
            let a = self.rows[k][j];
            if a != 0 {
                phi[pc] = (p - a) % p;
            }
        }
        Some(phi)
    }

    /// Expresses `v` as a combination of the inserted generators, if in the span.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, comb) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(comb)
    }

    /// First standard basis vector (in index order) outside the span.
    pub fn first_missing_unit(&self) -> Option<usize> {
        (0..self.n).find(|&j| {
            let mut e = vec![0u32; self.n];
            e[j] = 1;
            !self.contains(&e)
        })
    }
}

/// Incremental row echelon form without bookkeeping, for rank tests.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    inv: Vec<u32>,
}

impl Echelon {
    pub fn new(p: u32) -> Self {
        Echelon { p, rows: Vec::new(), pivots: Vec::new(), inv: (0..p).map(|a| if a == 0 { 0 } else { inv_mod(a, p) }).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn clear(&mut self) {
        self.rows.clear();
        self.pivots.clear();
    }

    /// Reduces `v` in place and keeps a copy if independent.
    pub fn insert_slice(&mut self, v: &mut [u32]) -> bool {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = v[pc];
            if a != 0 {
                let na = p - a;
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = (*x + na * r) % p;
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else { return false };
        let inv = self.inv[v[pc] as usize];
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        self.rows.push(v.to_vec());
        self.pivots.push(pc);
        true
    }

    /// Reduces `v` in place and keeps it if independent.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = v[pc];
            if a != 0 {
                let na = p - a;
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = (*x + na * r) % p;
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else { return false };
        let inv = self.inv[v[pc] as usize];
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

pub fn dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    (a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p as u64) as u32
}

/// Rank of a list of vectors, by an independent plain elimination.
pub fn rank(p: u32, vectors: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p) as u64;
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let a = m[i][c] as u64;
                for j in 0..ncols {
                    m[i][j] = ((m[i][j] as u64 + (p as u64 - a) * m[r][j] as u64) % p as u64) as u32;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the solution space of `A x = 0` (rows of `A` given).
pub fn nullspace(p: u32, a: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = a.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    let mut pivcols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p) as u64;
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] as u64;
                for j in 0..ncols {
                    m[i][j] = ((m[i][j] as u64 + (p as u64 - f) * m[r][j] as u64) % p as u64) as u32;
                }
            }
        }
        pivcols.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivcols.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (k, &pc) in pivcols.iter().enumerate() {
            v[pc] = (p - m[k][free]) % p;
        }
        out.push(v);
    }
    out
}
