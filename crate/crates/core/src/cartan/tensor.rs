use std::collections::BTreeMap;

use crate::scalar::Polynomial;

/// Index sets are bitmasks over at most 32 slots; a set bit `i` means the
/// basis element `i` occurs. Storage by mask makes antisymmetry canonical.
pub type IndexSet = u32;

pub fn indices(mask: IndexSet) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

pub fn mask_of(idx: &[usize]) -> Option<(IndexSet, i32)> {
    // Returns the mask and the sign of the sorting permutation, or None on repeats.
    let mut m: IndexSet = 0;
    for &i in idx {
        if m & (1 << i) != 0 {
            return None;
        }
        m |= 1 << i;
    }
    let mut inversions = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    Some((m, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// Sign of `e_a ∧ e_b` relative to the sorted union, for disjoint masks.
pub fn wedge_sign(a: IndexSet, b: IndexSet) -> i32 {
    let mut count = 0;
    for j in indices(b) {
        count += a.checked_shr(j as u32 + 1).unwrap_or(0).count_ones();
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of elements of `mask` below index `j`.
pub fn rank_below(mask: IndexSet, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

/// Homogeneous alternating tensor of fixed degree over `rank` basis slots with
/// polynomial coefficients in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AltTensor {
    rank: usize,
    degree: usize,
    nvars: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

impl AltTensor {
    pub fn zero(rank: usize, degree: usize, nvars: usize) -> Self {
        assert!(rank <= 32, "at most 32 slots");
        AltTensor { rank, degree, nvars, terms: BTreeMap::new() }
    }

    /// Degree-0 tensor holding a function.
    pub fn scalar(rank: usize, f: Polynomial) -> Self {
        let mut t = AltTensor::zero(rank, 0, f.nvars());
        t.add_term(0, &f);
        t
    }

    /// `f · e_{i1} ∧ … ∧ e_{ik}` for arbitrary (unsorted) indices.
    pub fn monomial(rank: usize, idx: &[usize], f: Polynomial) -> Self {
        let nvars = f.nvars();
        let mut t = AltTensor::zero(rank, idx.len(), nvars);
        assert!(idx.iter().all(|&i| i < rank), "slot index out of range");
        if let Some((m, s)) = mask_of(idx) {
            if s > 0 {
                t.add_term(m, &f);
            } else {
                t.add_term(m, &-&f);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient on a sorted index set.
    pub fn get(&self, mask: IndexSet) -> Polynomial {
        self.terms.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Component on arbitrary indices, with the antisymmetry sign applied.
    pub fn component(&self, idx: &[usize]) -> Polynomial {
        match mask_of(idx) {
            None => Polynomial::zero(self.nvars),
            Some((m, s)) => {
                let c = self.get(m);
                if s > 0 {
                    c
                } else {
                    -c
                }
            }
        }
    }

    pub fn add_term(&mut self, mask: IndexSet, c: &Polynomial) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    pub fn add_term_signed(&mut self, mask: IndexSet, sign: i32, c: &Polynomial) {
        if sign > 0 {
            self.add_term(mask, c)
        } else {
            self.add_term(mask, &-c)
        }
    }

    fn same_shape(&self, o: &AltTensor) -> bool {
        self.rank == o.rank && self.degree == o.degree && self.nvars == o.nvars
    }

    pub fn add(&self, o: &AltTensor) -> AltTensor {
        assert!(self.same_shape(o), "tensor shape mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, o: &AltTensor) -> AltTensor {
        assert!(self.same_shape(o), "tensor shape mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn neg(&self) -> AltTensor {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn scale(&self, f: &Polynomial) -> AltTensor {
        let mut out = AltTensor::zero(self.rank, self.degree, self.nvars);
        if f.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(*m, &(c * f));
        }
        out
    }

    pub fn wedge(&self, o: &AltTensor) -> AltTensor {
        assert!(self.rank == o.rank && self.nvars == o.nvars, "tensor shape mismatch");
        let mut out = AltTensor::zero(self.rank, self.degree + o.degree, self.nvars);
        if out.degree > self.rank {
            return out;
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                out.add_term_signed(a | b, wedge_sign(*a, *b), &(ca * cb));
            }
        }
        out
    }

    /// Contraction in the first slot with the covector/vector `v`:
    /// `ι_v(e_{i1}∧…∧e_{ik}) = Σ_s (−1)^s v_{i_s} e_{i1}∧…ê_{i_s}…∧e_{ik}`.
    pub fn contract(&self, v: &[Polynomial]) -> AltTensor {
        assert_eq!(v.len(), self.rank);
        assert!(self.degree > 0, "contraction of a degree-0 tensor");
        let mut out = AltTensor::zero(self.rank, self.degree - 1, self.nvars);
        for (m, c) in &self.terms {
            for (s, i) in indices(*m).enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let sign = if s % 2 == 0 { 1 } else { -1 };
                out.add_term_signed(m & !(1 << i), sign, &(c * &v[i]));
            }
        }
        out
    }

    /// Contraction with a single basis element `e_i`.
    pub fn contract_basis(&self, i: usize) -> AltTensor {
        assert!(self.degree > 0, "contraction of a degree-0 tensor");
        let mut out = AltTensor::zero(self.rank, self.degree - 1, self.nvars);
        for (m, c) in &self.terms {
            if m & (1 << i) != 0 {
                let s = rank_below(*m, i);
                out.add_term_signed(m & !(1 << i), if s % 2 == 0 { 1 } else { -1 }, c);
            }
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> AltTensor {
        let mut out = AltTensor::zero(self.rank, self.degree, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Keep the terms whose index set satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(IndexSet) -> bool) -> AltTensor {
        let mut out = AltTensor::zero(self.rank, self.degree, self.nvars);
        for (m, c) in &self.terms {
            if keep(*m) {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Scalar value of a degree-0 tensor.
    pub fn scalar_value(&self) -> Polynomial {
        assert_eq!(self.degree, 0);
        self.get(0)
    }

    /// Render with a name per basis slot and polynomial variable names.
    pub fn fmt_with(&self, slot_names: &[String], var_names: &[String], sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let basis: Vec<&str> = indices(*m).map(|i| slot_names[i].as_str()).collect();
            let basis = basis.join(sep);
            let (neg, coef) = split_sign(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = coef.fmt_with(var_names);
            if basis.is_empty() {
                if coef.needs_parens() && k > 0 {
                    out.push_str(&format!("({cs})"));
                } else {
                    out.push_str(&cs);
                }
            } else if coef.is_one() {
                out.push_str(&basis);
            } else if coef.needs_parens() {
                out.push_str(&format!("({cs})*{basis}"));
            } else {
                out.push_str(&format!("{cs}*{basis}"));
            }
        }
        out
    }
}

/// Pull a leading minus sign out of a single-term coefficient for display.
fn split_sign(c: &Polynomial) -> (bool, Polynomial) {
    if c.num_terms() == 1 {
        let (_, v) = c.terms().next().unwrap();
        if v.is_negative() {
            return (true, -c);
        }
    }
    (false, c.clone())
}
