//! Exact row echelon over the rationals, generic in the coordinate key,
//! plus the bracket-saturation worklist shared by the closure engines.
//!
//! During saturation the basis is kept in forward-reduced form only:
//! inserted elements are never modified afterwards, so every pair of
//! basis elements is bracketed exactly once with a fixed representative.
//! `reduced()` converts to the fully reduced form at the end.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rat::Rat;

pub(crate) type SparseVec<K> = BTreeMap<K, Rat>;

pub(crate) fn sub_scaled<K: Ord + Clone>(v: &mut SparseVec<K>, w: &SparseVec<K>, c: &Rat) {
    for (k, wc) in w {
        let entry = v.entry(k.clone()).or_insert_with(Rat::zero);
        *entry -= c * wc;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Echelon<K: Ord + Clone> {
    elems: Vec<SparseVec<K>>,
    pivot_of: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            elems: Vec::new(),
            pivot_of: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[SparseVec<K>] {
        &self.elems
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.pivot_of.keys()
    }

    pub fn has_pivot(&self, k: &K) -> bool {
        self.pivot_of.contains_key(k)
    }

    /// Eliminates every term of `v` sitting at a pivot, highest first.
    pub fn reduce(&self, v: &mut SparseVec<K>) {
        loop {
            let hit = v
                .iter()
                .rev()
                .find_map(|(k, _)| self.pivot_of.get(k).map(|&i| (k.clone(), i)));
            let Some((k, i)) = hit else { return };
            let c = v.get(&k).cloned().expect("hit key present");
            sub_scaled(v, &self.elems[i], &c);
            debug_assert!(!v.contains_key(&k));
        }
    }

    /// Inserts an already-reduced nonzero vector, normalizing its pivot
    /// coefficient to 1. Returns the slot index.
    pub fn insert_reduced(&mut self, mut v: SparseVec<K>) -> usize {
        let (pivot, lead) = v
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
            .expect("nonzero vector");
        debug_assert!(!self.pivot_of.contains_key(&pivot));
        let inv = lead.recip();
        for c in v.values_mut() {
            *c *= &inv;
        }
        let idx = self.elems.len();
        self.elems.push(v);
        self.pivot_of.insert(pivot, idx);
        idx
    }

    /// Reduce-then-insert; returns the slot index if the vector was new.
    pub fn insert(&mut self, mut v: SparseVec<K>) -> Option<usize> {
        self.reduce(&mut v);
        if v.is_empty() {
            None
        } else {
            Some(self.insert_reduced(v))
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_empty()
    }

    /// Remainder of `v` modulo the spanned subspace.
    pub fn remainder(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut w = v.clone();
        self.reduce(&mut w);
        w
    }

    /// Full reduced echelon form, elements ordered by decreasing pivot.
    pub fn reduced(self) -> Echelon<K> {
        let mut items = self.elems;
        items.sort_by(|u, v| {
            let pu = u.keys().next_back().expect("nonzero element");
            let pv = v.keys().next_back().expect("nonzero element");
            pu.cmp(pv)
        });
        let mut acc: Echelon<K> = Echelon::new();
        for mut v in items {
            // pivots already seen are strictly smaller, so the leading
            // term survives the reduction
            acc.reduce(&mut v);
            debug_assert!(!v.is_empty());
            acc.insert_reduced(v);
        }
        let mut elems = acc.elems;
        elems.reverse();
        let pivot_of = elems
            .iter()
            .enumerate()
            .map(|(i, v)| (v.keys().next_back().expect("nonzero").clone(), i))
            .collect();
        Echelon { elems, pivot_of }
    }
}

/// Saturates the span of `generators` under `bracket`.
///
/// Pairs are admitted through `admit_pair` before the bracket is computed
/// and results through `admit_result` before insertion; both hooks see
/// reduced basis representatives. Deterministic for a fixed input order.
pub(crate) fn saturate<K, E>(
    generators: &[E],
    to_vec: impl Fn(&E) -> SparseVec<K>,
    from_vec: impl Fn(&SparseVec<K>) -> E,
    bracket: impl Fn(&E, &E) -> E,
    admit_pair: impl Fn(&E, &E) -> bool,
    admit_result: impl Fn(&E) -> bool,
) -> Echelon<K>
where
    K: Ord + Clone,
    E: Clone,
{
    let mut ech: Echelon<K> = Echelon::new();
    let mut reps: Vec<E> = Vec::new();

    let mut push = |ech: &mut Echelon<K>, reps: &mut Vec<E>, cand: SparseVec<K>| {
        if let Some(idx) = ech.insert(cand) {
            reps.push(from_vec(&ech.elems()[idx]));
            debug_assert_eq!(reps.len(), ech.len());
        }
    };

    for g in generators {
        push(&mut ech, &mut reps, to_vec(g));
    }

    let mut next = 0usize;
    while next < reps.len() {
        let i = next;
        next += 1;
        for j in 0..i {
            // clones keep the borrow checker away from reps while pushing
            let (u, v) = (reps[i].clone(), reps[j].clone());
            if !admit_pair(&u, &v) {
                continue;
            }
            let w = bracket(&u, &v);
            if !admit_result(&w) {
                continue;
            }
            push(&mut ech, &mut reps, to_vec(&w));
        }
    }
    ech
}
