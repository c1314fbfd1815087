use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::closure::choose;
use super::GraphletClass;
use crate::json::BigCount;

/// Global counts of all 17 graphlet classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphletFrequencies {
    counts: [u128; GraphletClass::COUNT],
    n: u64,
    m: u64,
}

impl GraphletFrequencies {
    /// Assembles the vector from the closed 3- and 4-node counts.
    pub fn from_parts(n: u64, m: u64, triads: [u128; 4], quads: [u128; 11]) -> Self {
        let mut counts = [0u128; GraphletClass::COUNT];
        counts[0] = m as u128;
        counts[1] = choose(n as u128, 2) - m as u128;
        counts[2..6].copy_from_slice(&triads);
        counts[6..17].copy_from_slice(&quads);
        GraphletFrequencies { counts, n, m }
    }

    /// Builds a vector from raw counts in canonical order.
    pub fn from_counts(n: u64, m: u64, counts: [u128; GraphletClass::COUNT]) -> Self {
        GraphletFrequencies { counts, n, m }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn get(&self, class: GraphletClass) -> u128 {
        self.counts[class.index()]
    }

    pub fn counts(&self) -> &[u128; GraphletClass::COUNT] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (GraphletClass, u128)> + '_ {
        GraphletClass::ALL.iter().map(move |&c| (c, self.get(c)))
    }

    /// Sum over all classes on `k` nodes.
    pub fn total_of_size(&self, k: usize) -> u128 {
        GraphletClass::of_size(k).iter().map(|&c| self.get(c)).sum()
    }

    /// Signed per-class change from `before` to `self`.
    pub fn delta(&self, before: &GraphletFrequencies) -> [i128; GraphletClass::COUNT] {
        let mut out = [0i128; GraphletClass::COUNT];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.counts[i] as i128 - before.counts[i] as i128;
        }
        out
    }

    /// Stable JSON text: `{"n":..,"m":..,"counts":{"g2_1":..,..}}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("frequencies always serialize")
    }
}

/// Counts keyed by class id, in canonical order.
pub struct CountsMap<'a>(pub &'a [u128; GraphletClass::COUNT]);

impl Serialize for CountsMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(GraphletClass::COUNT))?;
        for c in GraphletClass::ALL {
            map.serialize_entry(c.id(), &BigCount(self.0[c.index()]))?;
        }
        map.end()
    }
}

impl Serialize for GraphletFrequencies {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GraphletFrequencies", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("counts", &CountsMap(&self.counts))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_canonical_order() {
        let f = GraphletFrequencies::from_parts(4, 6, [4, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let text = f.to_json();
        assert!(text.starts_with(r#"{"n":4,"m":6,"counts":{"g2_1":6,"g2_2":0,"g3_1":4,"#));
        let g4_2 = text.find("\"g4_2\"").unwrap();
        let g4_10 = text.find("\"g4_10\"").unwrap();
        assert!(g4_2 < g4_10);
    }

    #[test]
    fn large_counts_become_strings() {
        let n = 100_000_000u64;
        let quads = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, choose(n as u128, 4)];
        let f = GraphletFrequencies::from_parts(n, 0, [0, 0, 0, choose(n as u128, 3)], quads);
        assert!(f.to_json().contains(r#""g4_11":"4166666416666671249999975000000""#));
    }

    #[test]
    fn delta_is_signed() {
        let a = GraphletFrequencies::from_parts(3, 3, [1, 0, 0, 0], [0; 11]);
        let b = GraphletFrequencies::from_parts(3, 2, [0, 1, 0, 0], [0; 11]);
        let d = b.delta(&a);
        assert_eq!(d[GraphletClass::Triangle.index()], -1);
        assert_eq!(d[GraphletClass::TwoStar.index()], 1);
    }
}
