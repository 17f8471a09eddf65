//! Binary relations over a finite carrier `{0, .., size-1}`, stored as bit
//! matrices (one u64 row mask per source state). Carrier sizes up to 64 are
//! supported; the workbench only ever uses desk-scale carriers.

/// A binary relation on `{0, .., size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    size: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(size: usize) -> Relation {
        assert!((1..=64).contains(&size), "carrier size out of range");
        Relation {
            size,
            rows: vec![0; size],
        }
    }

    pub fn identity(size: usize) -> Relation {
        let mut r = Relation::empty(size);
        for s in 0..size {
            r.rows[s] = 1 << s;
        }
        r
    }

    pub fn full(size: usize) -> Relation {
        let mut r = Relation::empty(size);
        let mask = Relation::mask(size);
        for s in 0..size {
            r.rows[s] = mask;
        }
        r
    }

    fn mask(size: usize) -> u64 {
        if size == 64 {
            u64::MAX
        } else {
            (1u64 << size) - 1
        }
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut r = Relation::empty(size);
        for &(s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    /// Build a relation from a row-major bit mask: bit `s*size + t` set
    /// means `(s, t)` is in the relation.
    pub fn from_matrix_bits(size: usize, bits: u64) -> Relation {
        let mut r = Relation::empty(size);
        for s in 0..size {
            for t in 0..size {
                if bits >> (s * size + t) & 1 == 1 {
                    r.insert(s, t);
                }
            }
        }
        r
    }

    /// Build a sub-identity relation from a diagonal bit mask.
    pub fn from_diag_bits(size: usize, bits: u64) -> Relation {
        let mut r = Relation::empty(size);
        for s in 0..size {
            if bits >> s & 1 == 1 {
                r.insert(s, s);
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn insert(&mut self, s: usize, t: usize) {
        assert!(s < self.size && t < self.size, "pair out of carrier");
        self.rows[s] |= 1 << t;
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        s < self.size && t < self.size && self.rows[s] >> t & 1 == 1
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.size {
            for t in 0..self.size {
                if self.contains(s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        assert_eq!(self.size, other.size, "carrier mismatch");
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_sub_identity(&self) -> bool {
        self.is_subset(&Relation::identity(self.size))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "carrier mismatch");
        Relation {
            size: self.size,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Relational composition: `(s, t)` iff there is `u` with `(s, u)` here
    /// and `(u, t)` in `other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "carrier mismatch");
        let mut out = Relation::empty(self.size);
        for s in 0..self.size {
            let mut row = 0u64;
            let mut mids = self.rows[s];
            while mids != 0 {
                let u = mids.trailing_zeros() as usize;
                mids &= mids - 1;
                row |= other.rows[u];
            }
            out.rows[s] = row;
        }
        out
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn star(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.size));
        for k in 0..self.size {
            let krow = r.rows[k];
            for s in 0..self.size {
                if r.rows[s] >> k & 1 == 1 {
                    r.rows[s] |= krow;
                }
            }
            // row k itself may have grown; re-propagate once
            let krow = r.rows[k];
            for s in 0..self.size {
                if r.rows[s] >> k & 1 == 1 {
                    r.rows[s] |= krow;
                }
            }
        }
        r
    }

    /// Transitive closure, `R ; R^*`.
    pub fn trans_clos(&self) -> Relation {
        self.compose(&self.star())
    }

    /// Right residual `self -> other`:
    /// `{(s, u) | forall v. (u, v) in self implies (s, v) in other}`.
    pub fn rres(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "carrier mismatch");
        let mut out = Relation::empty(self.size);
        for s in 0..self.size {
            for u in 0..self.size {
                if self.rows[u] & !other.rows[s] == 0 {
                    out.rows[s] |= 1 << u;
                }
            }
        }
        out
    }

    /// Left residual `self ~> other`:
    /// `{(s, u) | forall v. (v, s) in self implies (v, u) in other}`.
    pub fn lres(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "carrier mismatch");
        let mut out = Relation::empty(self.size);
        for s in 0..self.size {
            for u in 0..self.size {
                let ok = (0..self.size)
                    .all(|v| !self.contains(v, s) || other.contains(v, u));
                if ok {
                    out.rows[s] |= 1 << u;
                }
            }
        }
        out
    }

    /// Anticodomain: `{(u, u) | no s with (s, u) in self}`.
    pub fn anti(&self) -> Relation {
        let cols = self.rows.iter().fold(0u64, |acc, r| acc | r);
        Relation::from_diag_bits(self.size, !cols & Relation::mask(self.size))
    }

    /// Codomain: `{(u, u) | some s with (s, u) in self}`; equals `a(a(R))`.
    pub fn cod(&self) -> Relation {
        let cols = self.rows.iter().fold(0u64, |acc, r| acc | r);
        Relation::from_diag_bits(self.size, cols)
    }

    /// Extension: `{(s, u) | (u, u) in self}`.
    pub fn ext(&self) -> Relation {
        let mut diag = 0u64;
        for u in 0..self.size {
            if self.contains(u, u) {
                diag |= 1 << u;
            }
        }
        let mut out = Relation::empty(self.size);
        for s in 0..self.size {
            out.rows[s] = diag;
        }
        out
    }

    /// Row-major bit encoding (inverse of [`Relation::from_matrix_bits`]);
    /// only usable when `size * size <= 64`.
    pub fn matrix_bits(&self) -> u64 {
        assert!(self.size * self.size <= 64);
        let mut bits = 0u64;
        for s in 0..self.size {
            bits |= self.rows[s] << (s * self.size);
        }
        bits
    }

    /// All relations over a carrier of the given size (size^2 <= 16 to keep
    /// this enumerable); row-major numeric order.
    pub fn all(size: usize) -> impl Iterator<Item = Relation> {
        assert!(size * size <= 16, "exhaustive relation space too large");
        (0u64..1 << (size * size)).map(move |bits| Relation::from_matrix_bits(size, bits))
    }

    /// All sub-identity relations over the carrier.
    pub fn all_sub_identity(size: usize) -> impl Iterator<Item = Relation> {
        assert!(size <= 16);
        (0u64..1 << size).map(move |bits| Relation::from_diag_bits(size, bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_union_star() {
        let r = Relation::from_pairs(3, &[(0, 1)]);
        let q = Relation::from_pairs(3, &[(1, 2)]);
        assert_eq!(r.compose(&q), Relation::from_pairs(3, &[(0, 2)]));

        let r = Relation::from_pairs(2, &[(0, 1)]);
        assert_eq!(
            r.star(),
            Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)])
        );
        assert!(Relation::empty(2).trans_clos().is_empty());
    }

    #[test]
    fn star_is_least_closure() {
        // against a brute-force fixpoint oracle
        for r in Relation::all(3) {
            let mut z = r.union(&Relation::identity(3));
            loop {
                let next = z.union(&z.compose(&z));
                if next == z {
                    break;
                }
                z = next;
            }
            assert_eq!(r.star(), z);
        }
    }

    #[test]
    fn rres_examples() {
        // residual of the empty relation is the top element
        assert_eq!(
            Relation::empty(2).rres(&Relation::empty(2)),
            Relation::full(2)
        );

        let r = Relation::from_pairs(2, &[(0, 1)]);
        let q = Relation::from_pairs(2, &[(0, 1)]);
        assert_eq!(
            r.rres(&q),
            Relation::from_pairs(2, &[(0, 0), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn residuation_laws_exhaustive_w2() {
        for y in Relation::all(2) {
            for z in Relation::all(2) {
                let rr = y.rres(&z);
                for x in Relation::all(2) {
                    let le = x.compose(&y).is_subset(&z);
                    assert_eq!(le, x.is_subset(&rr));
                    assert_eq!(le, y.is_subset(&x.lres(&z)));
                }
            }
        }
    }

    #[test]
    fn anti_cod_ext_examples() {
        let r = Relation::from_pairs(2, &[(0, 1)]);
        assert_eq!(r.anti(), Relation::from_pairs(2, &[(0, 0)]));

        let r = Relation::from_pairs(3, &[(0, 1), (2, 2)]);
        assert_eq!(r.cod(), Relation::from_pairs(3, &[(1, 1), (2, 2)]));
        assert!(Relation::empty(3).cod().is_empty());

        let r = Relation::from_pairs(2, &[(1, 1)]);
        assert_eq!(r.ext(), Relation::from_pairs(2, &[(0, 1), (1, 1)]));
        assert!(Relation::empty(2).ext().is_empty());
    }

    #[test]
    fn cod_is_double_anti() {
        for r in Relation::all(3) {
            assert_eq!(r.cod(), r.anti().anti());
        }
    }

    #[test]
    fn galois_connection_exhaustive() {
        for r in Relation::all(2) {
            for q in Relation::all(2) {
                assert_eq!(r.cod().is_subset(&q), r.is_subset(&q.ext()));
            }
        }
    }

    #[test]
    #[should_panic(expected = "carrier mismatch")]
    fn carrier_mismatch_panics() {
        let _ = Relation::empty(2).compose(&Relation::empty(3));
    }
}
