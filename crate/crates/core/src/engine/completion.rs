//! Critical-pair completion of module relations over a coefficient field.
//!
//! Every basis element is kept monic; making an element monic is the only
//! place a coefficient gets inverted, and it goes through the caller's
//! [`Inverter`], which is how the localization is tracked.

use std::cmp::Ordering;

use crate::poly::{ModVector, ModuleIndex, TermOrder};
use crate::scalar::{Coeff, Inverter};

/// Snapshot of a completion run that exceeded its degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapDiagnostics {
    pub side: &'static str,
    pub cap: u32,
    pub offending_degree: u32,
    pub offending_lead: ModuleIndex,
    pub basis_len: usize,
    pub pending_pairs: usize,
    pub leading_indices: Vec<ModuleIndex>,
}

#[derive(Debug)]
pub(crate) enum CompletionError<E> {
    Cap(Box<CapDiagnostics>),
    Invert(E),
}

pub(crate) struct Completion<'a, C, I> {
    order: TermOrder,
    cap: u32,
    side: &'static str,
    inverter: &'a mut I,
    basis: Vec<ModVector<C>>,
    leads: Vec<ModuleIndex>,
    pairs: Vec<(usize, usize)>,
}

impl<'a, C: Coeff, I: Inverter<C>> Completion<'a, C, I> {
    pub(crate) fn new(order: TermOrder, cap: u32, side: &'static str, inverter: &'a mut I) -> Self {
        Completion {
            order,
            cap,
            side,
            inverter,
            basis: Vec::new(),
            leads: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Adds elements that are already monic and mutually closed under
    /// critical pairs (a completed basis moved into another slot). No pairs
    /// are formed among them.
    pub(crate) fn seed(&mut self, closed: impl IntoIterator<Item = ModVector<C>>) {
        for v in closed {
            let lead = v.leading_term(self.order).expect("seeded vectors are nonzero").0.clone();
            self.basis.push(v);
            self.leads.push(lead);
        }
    }

    /// Reduces `v` against the current basis and keeps the remainder if it
    /// is nonzero.
    pub(crate) fn add(&mut self, v: &ModVector<C>) -> Result<(), CompletionError<I::Error>> {
        let h = reduce_full(v, &self.basis, &self.leads, self.order);
        if h.is_zero() {
            return Ok(());
        }
        let (lead, lc) = h.leading_term(self.order).expect("nonzero");
        let lead = lead.clone();
        let inv = self.inverter.invert(lc).map_err(CompletionError::Invert)?;
        let h = h.scale(&inv);
        self.check_cap(&h, &lead)?;
        let idx = self.basis.len();
        for (i, l) in self.leads.iter().enumerate() {
            if l.slot == lead.slot {
                self.pairs.push((i, idx));
            }
        }
        self.basis.push(h);
        self.leads.push(lead);
        Ok(())
    }

    fn check_cap(&self, h: &ModVector<C>, lead: &ModuleIndex) -> Result<(), CompletionError<I::Error>> {
        let degree = h.degree();
        if degree > self.cap {
            return Err(CompletionError::Cap(Box::new(CapDiagnostics {
                side: self.side,
                cap: self.cap,
                offending_degree: degree,
                offending_lead: lead.clone(),
                basis_len: self.basis.len(),
                pending_pairs: self.pairs.len(),
                leading_indices: self.leads.clone(),
            })));
        }
        Ok(())
    }

    /// Processes critical pairs until none remain, smallest lcm first.
    pub(crate) fn run(&mut self) -> Result<(), CompletionError<I::Error>> {
        while !self.pairs.is_empty() {
            let pos = self.next_pair();
            let (i, j) = self.pairs.remove(pos);
            let s = self.s_vector(i, j);
            self.add(&s)?;
        }
        Ok(())
    }

    fn pair_lcm(&self, (i, j): (usize, usize)) -> ModuleIndex {
        ModuleIndex {
            slot: self.leads[i].slot,
            exps: self.leads[i].exps.lcm(&self.leads[j].exps),
        }
    }

    fn next_pair(&self) -> usize {
        let order = self.order;
        let mut best = 0;
        let mut best_lcm = self.pair_lcm(self.pairs[0]);
        for (k, &p) in self.pairs.iter().enumerate().skip(1) {
            let l = self.pair_lcm(p);
            let ord = order
                .cmp_index(&l, &best_lcm)
                .then_with(|| p.cmp(&self.pairs[best]));
            if ord == Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        best
    }

    fn s_vector(&self, i: usize, j: usize) -> ModVector<C> {
        let l = self.pair_lcm((i, j));
        let mi = self.leads[i].exps.quotient_of(&l.exps).expect("lcm is a multiple");
        let mj = self.leads[j].exps.quotient_of(&l.exps).expect("lcm is a multiple");
        let one = C::one();
        &self.basis[i].mul_term(&mi, &one) - &self.basis[j].mul_term(&mj, &one)
    }

    /// The reduced basis: minimal leads only, tails fully reduced, sorted by
    /// leading index ascending.
    pub(crate) fn finish(self) -> Result<Vec<ModVector<C>>, CompletionError<I::Error>> {
        let n = self.basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    j != i
                        && self.leads[j].divides(&self.leads[i])
                        && (self.leads[j] != self.leads[i] || j < i)
                })
            })
            .collect();
        let kept_basis: Vec<ModVector<C>> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let kept_leads: Vec<ModuleIndex> = keep.iter().map(|&i| self.leads[i].clone()).collect();
        let mut out = Vec::with_capacity(keep.len());
        for (k, g) in kept_basis.iter().enumerate() {
            let lead = &kept_leads[k];
            let lc = g.coeff(lead).expect("lead present").clone();
            let mut tail = g.clone();
            tail.add_term(lead.clone(), -lc.clone());
            let others: Vec<ModVector<C>> = kept_basis
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, v)| v.clone())
                .collect();
            let other_leads: Vec<ModuleIndex> = kept_leads
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, l)| l.clone())
                .collect();
            let mut reduced = reduce_full(&tail, &others, &other_leads, self.order);
            reduced.add_term(lead.clone(), lc);
            self.check_cap(&reduced, lead)?;
            out.push(reduced);
        }
        out.sort_by(|a, b| {
            let la = a.leading_term(self.order).expect("nonzero").0;
            let lb = b.leading_term(self.order).expect("nonzero").0;
            self.order.cmp_index(la, lb)
        });
        Ok(out)
    }
}

/// Full reduction of `v` by monic `basis` with leading indices `leads`.
pub(crate) fn reduce_full<C: Coeff>(
    v: &ModVector<C>,
    basis: &[ModVector<C>],
    leads: &[ModuleIndex],
    order: TermOrder,
) -> ModVector<C> {
    let mut rem = v.clone();
    let mut out = ModVector::zero(v.nvars());
    while !rem.is_zero() {
        let (lead, c) = rem.leading_term(order).expect("nonzero");
        let (lead, c) = (lead.clone(), c.clone());
        match leads.iter().position(|l| l.divides(&lead)) {
            Some(k) => {
                let m = leads[k].exps.quotient_of(&lead.exps).expect("divides");
                rem = &rem - &basis[k].mul_term(&m, &c);
            }
            None => {
                rem.add_term(lead.clone(), -c.clone());
                out.add_term(lead, c);
            }
        }
    }
    out
}
