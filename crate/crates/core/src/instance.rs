//! Problem representation shared by every solver.
//!
//! Elements and sets are 0-based inside the crate. The OR-Library files and
//! the CLI speak 1-based indices; conversion happens in [`crate::orlib`].

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a set within an [`Instance`] (0-based).
pub type SetId = usize;
/// Index of a universe element within an [`Instance`] (0-based).
pub type ElemId = usize;

/// What [`Instance::build_with_report`] had to clean up in the raw input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Normalization {
    /// Input sets with no elements. They are dropped.
    pub dropped_empty: usize,
    /// Input sets that listed some element more than once.
    pub deduplicated: usize,
}

/// An immutable unicost set cover instance.
///
/// Incidence is stored in both directions, as bit vectors for unions and
/// popcounts and as sorted index lists for iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    universe_size: usize,
    sets: Vec<FixedBitSet>,
    set_elems: Vec<Vec<ElemId>>,
    elem_sets_bits: Vec<FixedBitSet>,
    elem_sets: Vec<Vec<SetId>>,
    /// Position of each kept set in the raw input (0-based).
    labels: Vec<usize>,
}

impl Instance {
    /// Builds an instance from 1-based element lists.
    pub fn build<I, S>(universe_size: usize, raw_sets: I, name: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        Self::build_with_report(universe_size, raw_sets, name).map(|(inst, _)| inst)
    }

    /// Like [`Instance::build`], also reporting how many input sets were
    /// empty (dropped) or carried duplicate elements (collapsed).
    pub fn build_with_report<I, S>(
        universe_size: usize,
        raw_sets: I,
        name: impl Into<String>,
    ) -> Result<(Self, Normalization)>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut report = Normalization::default();
        let mut sets = Vec::new();
        let mut labels = Vec::new();
        for (index, raw) in raw_sets.into_iter().enumerate() {
            let raw = raw.as_ref();
            let mut bits = FixedBitSet::with_capacity(universe_size);
            for &element in raw {
                if element == 0 || element > universe_size {
                    return Err(Error::ElementOutOfRange {
                        set: index + 1,
                        element,
                        universe_size,
                    });
                }
                bits.insert(element - 1);
            }
            if bits.count_ones(..) == 0 {
                report.dropped_empty += 1;
                continue;
            }
            if bits.count_ones(..) != raw.len() {
                report.deduplicated += 1;
            }
            sets.push(bits);
            labels.push(index);
        }

        let mut covered = FixedBitSet::with_capacity(universe_size);
        for set in &sets {
            covered.union_with(set);
        }
        if covered.count_ones(..) != universe_size {
            covered.toggle_range(..);
            return Err(Error::Uncoverable(covered.ones().map(|x| x + 1).collect()));
        }

        if report.dropped_empty > 0 {
            log::warn!("dropped {} empty set(s)", report.dropped_empty);
        }
        if report.deduplicated > 0 {
            log::warn!("collapsed duplicate elements in {} set(s)", report.deduplicated);
        }

        let set_elems: Vec<Vec<ElemId>> = sets.iter().map(|s| s.ones().collect()).collect();
        let mut elem_sets = vec![Vec::new(); universe_size];
        for (s, elems) in set_elems.iter().enumerate() {
            for &x in elems {
                elem_sets[x].push(s);
            }
        }
        let elem_sets_bits = elem_sets
            .iter()
            .map(|ids| {
                let mut bits = FixedBitSet::with_capacity(sets.len());
                bits.extend(ids.iter().copied());
                bits
            })
            .collect();

        let instance = Self {
            name: name.into(),
            universe_size,
            sets,
            set_elems,
            elem_sets_bits,
            elem_sets,
            labels,
        };
        Ok((instance, report))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    /// Total number of (element, set) incidences.
    pub fn nonzeros(&self) -> usize {
        self.set_elems.iter().map(Vec::len).sum()
    }

    pub fn set_bits(&self, set: SetId) -> &FixedBitSet {
        &self.sets[set]
    }

    /// Sorted elements of `set`.
    pub fn elements_of(&self, set: SetId) -> &[ElemId] {
        &self.set_elems[set]
    }

    /// Sorted identifiers of the sets containing `element`.
    pub fn sets_containing(&self, element: ElemId) -> &[SetId] {
        &self.elem_sets[element]
    }

    pub fn containing_bits(&self, element: ElemId) -> &FixedBitSet {
        &self.elem_sets_bits[element]
    }

    pub fn max_set_size(&self) -> usize {
        self.set_elems.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Input position (0-based) of a set, before empty sets were dropped.
    pub fn label(&self, set: SetId) -> usize {
        self.labels[set]
    }

    /// Inverse of [`Instance::label`].
    pub fn set_for_label(&self, label: usize) -> Option<SetId> {
        self.labels.binary_search(&label).ok()
    }

    /// Checks that element→set incidence is the exact transpose of set→element.
    pub fn audit_transpose(&self) -> bool {
        (0..self.universe_size)
            .all(|x| (0..self.num_sets()).all(|s| self.sets[s].contains(x) == self.elem_sets_bits[x].contains(s)))
            && self
                .elem_sets
                .iter()
                .zip(&self.elem_sets_bits)
                .all(|(ids, bits)| ids.iter().copied().eq(bits.ones()))
    }

    pub(crate) fn check_ids(&self, selection: &[SetId]) -> Result<()> {
        match selection.iter().find(|&&s| s >= self.num_sets()) {
            Some(&s) => Err(Error::UnknownSet(s)),
            None => Ok(()),
        }
    }

    /// Union of the selected sets. Identifiers must be valid.
    pub(crate) fn union_of(&self, selection: &[SetId]) -> FixedBitSet {
        let mut covered = FixedBitSet::with_capacity(self.universe_size);
        for &s in selection {
            covered.union_with(&self.sets[s]);
        }
        covered
    }

    /// Number of universe elements outside the union of `selection`.
    pub fn uncovered_count(&self, selection: &[SetId]) -> Result<usize> {
        self.check_ids(selection)?;
        Ok(self.universe_size - self.union_of(selection).count_ones(..))
    }

    /// True iff the selected sets cover the whole universe.
    pub fn is_cover(&self, cover: &Cover) -> Result<bool> {
        Ok(self.uncovered_count(cover.selected())? == 0)
    }
}

/// An ordered selection of distinct set identifiers claimed to cover an
/// instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    instance_name: String,
    selected: Vec<SetId>,
}

impl Cover {
    pub fn new(instance_name: impl Into<String>, selected: Vec<SetId>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(selected.len());
        if let Some(&dup) = selected.iter().find(|&&s| !seen.insert(s)) {
            return Err(Error::DuplicateSet(dup));
        }
        Ok(Self {
            instance_name: instance_name.into(),
            selected,
        })
    }

    /// Caller guarantees `selected` has no duplicates.
    pub(crate) fn from_distinct(instance_name: &str, selected: Vec<SetId>) -> Self {
        debug_assert!(Self::new(instance_name, selected.clone()).is_ok());
        Self {
            instance_name: instance_name.to_owned(),
            selected,
        }
    }

    pub fn instance_name(&self) -> &str {
        &self.instance_name
    }

    pub fn selected(&self) -> &[SetId] {
        &self.selected
    }

    /// Number of selected sets, the `k` of a result table.
    pub fn size(&self) -> usize {
        self.selected.len()
    }

    /// Selected identifiers in ascending order.
    pub fn sorted(&self) -> Vec<SetId> {
        let mut ids = self.selected.clone();
        ids.sort_unstable();
        ids
    }
}

/// The five-element, four-set instance used throughout the documentation:
/// `S1 = {1,4}`, `S2 = {1,2,3}`, `S3 = {2,3,5}`, `S4 = {3,4}`.
pub fn worked_example() -> Instance {
    Instance::build(
        5,
        [vec![1, 4], vec![1, 2, 3], vec![2, 3, 5], vec![3, 4]],
        "worked-example",
    )
    .expect("worked example is a valid instance")
}
