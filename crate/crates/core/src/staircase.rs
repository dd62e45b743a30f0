//! Downward-closed index families ("staircases") and their corners.
//!
//! A staircase is stored by the minimal generators of its complement: the
//! removed set is upward closed within each generator slot, so by Dickson's
//! lemma it has finitely many minimal elements, the corners. Membership is a
//! divisibility test against the corners.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::poly::{monomials_up_to_degree, ExponentVector, ModuleIndex};

/// Minimal elements of a removed set.
pub type CornerSet = BTreeSet<ModuleIndex>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StaircaseError {
    #[error("index {0:?} is already removed")]
    AlreadyRemoved(ModuleIndex),
    #[error("index {0:?} does not fit a staircase with {1} slots in {2} variables")]
    ShapeMismatch(ModuleIndex, u32, usize),
}

/// The `≤`-minimal elements of `indices`, compared within each slot.
///
/// The upward closure of the result equals the upward closure of the input.
pub fn minimal_generators<'a>(indices: impl IntoIterator<Item = &'a ModuleIndex>) -> CornerSet {
    let mut sorted: Vec<&ModuleIndex> = indices.into_iter().collect();
    // a divisor has no larger degree, so scanning by degree sees divisors first
    sorted.sort_by_key(|j| (j.degree(), (*j).clone()));
    let mut out: Vec<ModuleIndex> = Vec::new();
    for j in sorted {
        if !out.iter().any(|c| c.divides(j)) {
            out.push(j.clone());
        }
    }
    out.into_iter().collect()
}

/// A good family of indices `(ℓ, i)`: everything not divisible by a corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Staircase {
    slots: u32,
    nvars: usize,
    corners: CornerSet,
}

impl Staircase {
    /// The canonical family: nothing removed.
    pub fn full(slots: u32, nvars: usize) -> Self {
        Staircase {
            slots,
            nvars,
            corners: CornerSet::new(),
        }
    }

    /// The family whose removed set is generated by `removed`.
    pub fn from_removed<'a>(
        slots: u32,
        nvars: usize,
        removed: impl IntoIterator<Item = &'a ModuleIndex>,
    ) -> Result<Self, StaircaseError> {
        let removed: Vec<&ModuleIndex> = removed.into_iter().collect();
        for j in &removed {
            check_shape(j, slots, nvars)?;
        }
        Ok(Staircase {
            slots,
            nvars,
            corners: minimal_generators(removed),
        })
    }

    /// A staircase with exactly these corners, without minimizing them.
    /// Callers check [`Staircase::is_antichain`] themselves.
    pub fn from_corners_raw(slots: u32, nvars: usize, corners: CornerSet) -> Self {
        Staircase {
            slots,
            nvars,
            corners,
        }
    }

    pub fn slots(&self) -> u32 {
        self.slots
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn corners(&self) -> &CornerSet {
        &self.corners
    }

    /// Whether `j` belongs to the family.
    pub fn contains(&self, j: &ModuleIndex) -> Result<bool, StaircaseError> {
        check_shape(j, self.slots, self.nvars)?;
        Ok(!self.corners.iter().any(|c| c.divides(j)))
    }

    /// Membership for indices already known to have the right shape.
    pub fn contains_unchecked(&self, j: &ModuleIndex) -> bool {
        !self.corners.iter().any(|c| c.divides(j))
    }

    /// The corner whose cone contains `j`, if any.
    pub fn dividing_corner(&self, j: &ModuleIndex) -> Option<&ModuleIndex> {
        self.corners.iter().find(|c| c.divides(j))
    }

    /// Removes the cone above `j`.
    pub fn remove_corner(&self, j: &ModuleIndex) -> Result<Staircase, StaircaseError> {
        if !self.contains(j)? {
            return Err(StaircaseError::AlreadyRemoved(j.clone()));
        }
        let mut corners: CornerSet = self
            .corners
            .iter()
            .filter(|c| !j.divides(c))
            .cloned()
            .collect();
        corners.insert(j.clone());
        Ok(Staircase {
            slots: self.slots,
            nvars: self.nvars,
            corners,
        })
    }

    /// No corner divides another.
    pub fn is_antichain(&self) -> bool {
        is_antichain(&self.corners)
    }

    /// True when the family has no members at all.
    pub fn is_empty_family(&self) -> bool {
        let zero = ExponentVector::zero(self.nvars);
        (1..=self.slots).all(|s| !self.contains_unchecked(&ModuleIndex::new(s, zero.clone())))
    }

    /// Family members of total degree at most `d`, ascending lex.
    pub fn members_up_to_degree(&self, d: u32) -> Vec<ModuleIndex> {
        let monos = monomials_up_to_degree(self.nvars, d);
        let mut out = Vec::new();
        for slot in 1..=self.slots {
            for e in &monos {
                let j = ModuleIndex::new(slot, e.clone());
                if self.contains_unchecked(&j) {
                    out.push(j);
                }
            }
        }
        out.sort();
        out
    }

    /// Number of family members of total degree at most `d`.
    pub fn count_up_to_degree(&self, d: u32) -> u64 {
        let monos = monomials_up_to_degree(self.nvars, d);
        let mut n = 0;
        for slot in 1..=self.slots {
            for e in &monos {
                if self.contains_unchecked(&ModuleIndex::new(slot, e.clone())) {
                    n += 1;
                }
            }
        }
        n
    }

    /// ASCII picture of one slot of a two-variable staircase: `x1` grows to
    /// the right, `x2` grows upward; `C` marks corners, `#` removed cells and
    /// `.` family cells. `None` unless there are exactly two variables.
    pub fn render_grid(&self, slot: u32, size: Option<u32>) -> Option<String> {
        if self.nvars != 2 {
            return None;
        }
        let extent = self
            .corners
            .iter()
            .filter(|c| c.slot == slot)
            .flat_map(|c| c.exps.as_slice().iter().copied())
            .max()
            .map_or(0, |m| m + 2);
        let size = size.unwrap_or(extent.max(8));
        let mut out = String::new();
        for y in (0..size).rev() {
            for x in 0..size {
                let j = ModuleIndex::new(slot, vec![x, y]);
                let ch = if self.corners.contains(&j) {
                    'C'
                } else if self.contains_unchecked(&j) {
                    '.'
                } else {
                    '#'
                };
                out.push(ch);
            }
            out.push('\n');
        }
        Some(out)
    }

    /// Corners listed one per line, for shapes that do not render as a grid.
    pub fn render_corners(&self) -> String {
        let mut out = String::new();
        for c in &self.corners {
            let _ = writeln!(out, "{c:?}");
        }
        out
    }
}

pub fn is_antichain(corners: &CornerSet) -> bool {
    corners
        .iter()
        .all(|a| corners.iter().all(|b| a == b || !a.divides(b)))
}

fn check_shape(j: &ModuleIndex, slots: u32, nvars: usize) -> Result<(), StaircaseError> {
    if j.slot == 0 || j.slot > slots || j.exps.len() != nvars {
        Err(StaircaseError::ShapeMismatch(j.clone(), slots, nvars))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn ix(a: u32, b: u32) -> ModuleIndex {
        ModuleIndex::new(1, vec![a, b])
    }

    fn three_corners() -> Staircase {
        Staircase::from_removed(1, 2, &[ix(2, 5), ix(5, 3), ix(6, 2)]).unwrap()
    }

    /// Upward closure of `gens` inside the `size × size` grid, by enumeration.
    fn upward_closure(gens: &[(u32, u32)], size: u32) -> HashSet<(u32, u32)> {
        let mut out = HashSet::new();
        for &(a, b) in gens {
            for x in a..size {
                for y in b..size {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn three_corner_example_is_minimal() {
        let c = minimal_generators(&[ix(2, 5), ix(5, 3), ix(6, 2)]);
        assert_eq!(c, [ix(2, 5), ix(5, 3), ix(6, 2)].into_iter().collect());
    }

    #[test]
    fn empty_input_has_no_corners() {
        assert!(minimal_generators(&[]).is_empty());
    }

    #[test]
    fn dominated_index_is_dropped() {
        let c = minimal_generators(&[ix(1, 0), ix(0, 1), ix(1, 1)]);
        assert_eq!(c, [ix(1, 0), ix(0, 1)].into_iter().collect());
    }

    #[test]
    fn three_corner_membership() {
        let st = three_corners();
        assert!(st.contains(&ix(3, 3)).unwrap());
        assert!(st.contains(&ix(4, 4)).unwrap());
        assert!(!st.contains(&ix(7, 7)).unwrap());
        let removed = upward_closure(&[(2, 5), (5, 3), (6, 2)], 8);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(st.contains(&ix(x, y)).unwrap(), !removed.contains(&(x, y)));
            }
        }
    }

    #[test]
    fn membership_shape_errors() {
        let st = three_corners();
        assert!(st.contains(&ModuleIndex::new(1, vec![1])).is_err());
        assert!(st.contains(&ModuleIndex::new(2, vec![0, 0])).is_err());
    }

    #[test]
    fn removing_the_origin_empties_the_family() {
        let st = Staircase::full(1, 2).remove_corner(&ix(0, 0)).unwrap();
        assert_eq!(st.corners(), &[ix(0, 0)].into_iter().collect());
        assert!(st.is_empty_family());
        assert_eq!(st.count_up_to_degree(5), 0);
    }

    #[test]
    fn sequential_removal_builds_the_three_corners() {
        let st = Staircase::full(1, 2)
            .remove_corner(&ix(2, 5))
            .unwrap()
            .remove_corner(&ix(5, 3))
            .unwrap()
            .remove_corner(&ix(6, 2))
            .unwrap();
        assert_eq!(st, three_corners());
    }

    #[test]
    fn removing_the_red_cell_absorbs_a_corner() {
        let st = three_corners().remove_corner(&ix(3, 3)).unwrap();
        // oracle: compare upward closures on the grid
        let expected = upward_closure(&[(2, 5), (5, 3), (6, 2), (3, 3)], 8);
        let got: Vec<(u32, u32)> = st
            .corners()
            .iter()
            .map(|c| (c.exps.as_slice()[0], c.exps.as_slice()[1]))
            .collect();
        assert_eq!(upward_closure(&got, 8), expected);
        assert_eq!(st.corners(), &[ix(2, 5), ix(3, 3), ix(6, 2)].into_iter().collect());
    }

    #[test]
    fn removing_twice_fails() {
        let st = three_corners();
        assert_eq!(st.remove_corner(&ix(7, 7)), Err(StaircaseError::AlreadyRemoved(ix(7, 7))));
    }

    #[test]
    fn counting() {
        assert_eq!(Staircase::full(1, 2).count_up_to_degree(2), 6);
        let empty = Staircase::from_removed(2, 3, &[
            ModuleIndex::new(1, vec![0, 0, 0]),
            ModuleIndex::new(2, vec![0, 0, 0]),
        ])
        .unwrap();
        assert_eq!(empty.count_up_to_degree(4), 0);
        assert_eq!(three_corners().count_up_to_degree(7), inclusion_exclusion(&three_corners(), 7));
    }

    #[test]
    fn three_corner_grid() {
        let grid = three_corners().render_grid(1, None).unwrap();
        let rows: Vec<&str> = grid.lines().collect();
        assert_eq!(rows.len(), 8);
        // row index from the top is 7 - y
        assert_eq!(rows[7 - 5], "..C#####");
        assert_eq!(rows[7 - 3], ".....C##");
        assert_eq!(rows[7 - 2], "......C#");
        assert_eq!(rows[7], "........");
        let free = Staircase::full(1, 2).render_grid(1, None).unwrap();
        assert!(free.chars().all(|c| c == '.' || c == '\n'));
        assert!(Staircase::full(1, 3).render_grid(1, None).is_none());
    }

    /// Independent count: inclusion–exclusion over subsets of corners, using
    /// that monomials of degree ≤ d divisible by `lcm` number C(n + d − |lcm|, n).
    fn inclusion_exclusion(st: &Staircase, d: u32) -> u64 {
        let n = st.nvars() as u64;
        let binom = |a: u64, b: u64| -> u64 {
            let mut r = 1u64;
            for i in 0..b {
                r = r * (a - i) / (i + 1);
            }
            r
        };
        let count = |budget: i64| -> i64 {
            if budget < 0 {
                0
            } else {
                binom(n + budget as u64, n) as i64
            }
        };
        let mut total = 0i64;
        for slot in 1..=st.slots() {
            let cs: Vec<&ModuleIndex> = st.corners().iter().filter(|c| c.slot == slot).collect();
            for mask in 0u32..(1 << cs.len()) {
                let mut l = ExponentVector::zero(st.nvars());
                for (i, c) in cs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        l = l.lcm(&c.exps);
                    }
                }
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                total += sign * count(d as i64 - l.degree() as i64);
            }
        }
        total as u64
    }

    fn corner_list() -> impl Strategy<Value = Vec<ModuleIndex>> {
        prop::collection::vec((1u32..3, 0u32..7, 0u32..7), 0..8)
            .prop_map(|v| v.into_iter().map(|(s, a, b)| ModuleIndex::new(s, vec![a, b])).collect())
    }

    proptest! {
        #[test]
        fn minimal_generators_preserve_closure(gens in corner_list()) {
            let mg = minimal_generators(&gens);
            prop_assert!(is_antichain(&mg));
            prop_assert_eq!(minimal_generators(&mg), mg.clone());
            for s in 1..3 {
                for x in 0..9 {
                    for y in 0..9 {
                        let j = ModuleIndex::new(s, vec![x, y]);
                        let a = gens.iter().any(|g| g.divides(&j));
                        let b = mg.iter().any(|g| g.divides(&j));
                        prop_assert_eq!(a, b);
                    }
                }
            }
        }

        #[test]
        fn count_matches_inclusion_exclusion(gens in corner_list(), d in 0u32..10) {
            let st = Staircase::from_removed(2, 2, &gens).unwrap();
            prop_assert_eq!(st.count_up_to_degree(d), inclusion_exclusion(&st, d));
            prop_assert_eq!(st.members_up_to_degree(d).len() as u64, st.count_up_to_degree(d));
        }

        #[test]
        fn families_are_downward_closed(gens in corner_list(), x in 0u32..8, y in 0u32..8) {
            let st = Staircase::from_removed(2, 2, &gens).unwrap();
            let j = ModuleIndex::new(1, vec![x, y]);
            if st.contains(&j).unwrap() {
                for a in 0..=x {
                    for b in 0..=y {
                        prop_assert!(st.contains(&ModuleIndex::new(1, vec![a, b])).unwrap());
                    }
                }
            }
        }

        #[test]
        fn removal_sequences_stabilize(seq in prop::collection::vec((0u32..6, 0u32..6), 1..60)) {
            // random removals on a bounded grid: each accepted removal strictly
            // shrinks the family and keeps the corners an antichain; the family
            // inside the grid can only shrink finitely often
            let mut st = Staircase::full(1, 2);
            let mut size = 36u64;
            let bounded = |st: &Staircase| {
                (0..6u32).flat_map(|a| (0..6u32).map(move |b| (a, b)))
                    .filter(|&(a, b)| st.contains_unchecked(&ix(a, b)))
                    .count() as u64
            };
            for (a, b) in seq {
                match st.remove_corner(&ix(a, b)) {
                    Ok(next) => {
                        let n = bounded(&next);
                        prop_assert!(n < size);
                        prop_assert!(next.is_antichain());
                        size = n;
                        st = next;
                    }
                    Err(StaircaseError::AlreadyRemoved(_)) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
                prop_assert!(st.corners().len() <= 6);
            }
        }
    }
}
