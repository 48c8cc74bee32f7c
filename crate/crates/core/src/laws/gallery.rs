//! Canonical witness artifacts, shipped as JSON data so reports and
//! command-line runs can reference stable, versioned inputs.

use crate::mapanalysis::MapDescription;
use crate::matcore::CMatrix;

/// One shipped artifact: its identifier, what it demonstrates, and the
/// raw document (a matrix file or a map file).
#[derive(Debug, Clone, Copy)]
pub struct GalleryEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub expected: &'static str,
    pub raw: &'static str,
}

const ENTRIES: [GalleryEntry; 6] = [
    GalleryEntry {
        id: "nilpotent2",
        summary: "e1⊗e2, the 2x2 nilpotent shift block",
        expected: "transform is the zero matrix for interior weights; not a fixed point, its square is",
        raw: include_str!("../../gallery/nilpotent2.json"),
    },
    GalleryEntry {
        id: "rank_one_positive",
        summary: "x⊗y with x=(1,1)/√2, y=e1, a non-invertible rank-one matrix",
        expected: "transform is PSD while the matrix is not, so invertibility in the positivity law cannot be dropped",
        raw: include_str!("../../gallery/rank_one_positive.json"),
    },
    GalleryEntry {
        id: "scalar_reciprocal",
        summary: "the 1x1 map z ↦ 1/z (0 ↦ 0), multiplicative but not additive",
        expected: "condition check reports residual 0 with verdict dimension_one; extraction refuses it",
        raw: include_str!("../../gallery/scalar_reciprocal.json"),
    },
    GalleryEntry {
        id: "conj_haar4",
        summary: "conjugation by a fixed Haar-drawn 4x4 unitary",
        expected: "condition satisfied; extraction recovers the unitary up to a global phase",
        raw: include_str!("../../gallery/conj_haar4.json"),
    },
    GalleryEntry {
        id: "anticonj",
        summary: "adjoint-twisted conjugation A ↦ U A* U* by a fixed 3x3 unitary",
        expected: "condition violated with residual at least 0.1 within the canonical pairs",
        raw: include_str!("../../gallery/anticonj.json"),
    },
    GalleryEntry {
        id: "scale2_conj",
        summary: "doubled conjugation A ↦ 2·U A U* by a fixed 2x2 unitary",
        expected: "condition violated already at the pair (I, I)",
        raw: include_str!("../../gallery/scale2_conj.json"),
    },
];

/// All shipped artifacts, in stable order.
pub fn entries() -> &'static [GalleryEntry] {
    &ENTRIES
}

/// Looks an artifact up by identifier.
pub fn find(id: &str) -> Option<&'static GalleryEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

fn matrix(raw: &'static str) -> CMatrix {
    serde_json::from_str(raw).expect("shipped gallery matrix parses")
}

fn map(raw: &'static str) -> MapDescription {
    serde_json::from_str(raw).expect("shipped gallery map parses")
}

/// The 2x2 nilpotent shift block `e1⊗e2`.
pub fn nilpotent2() -> CMatrix {
    matrix(find("nilpotent2").unwrap().raw)
}

/// The rank-one matrix `x⊗y` with `x=(1,1)/√2`, `y=e1`; its transform
/// is PSD although the matrix itself is not.
pub fn rank_one_positive() -> CMatrix {
    matrix(find("rank_one_positive").unwrap().raw)
}

/// The 1x1 reciprocal map.
pub fn reciprocal_map() -> MapDescription {
    map(find("scalar_reciprocal").unwrap().raw)
}

/// Conjugation by a fixed Haar-drawn 4x4 unitary.
pub fn conjugation_haar4() -> MapDescription {
    map(find("conj_haar4").unwrap().raw)
}

/// Adjoint-twisted conjugation by a fixed 3x3 unitary.
pub fn anti_conjugation3() -> MapDescription {
    map(find("anticonj").unwrap().raw)
}

/// Doubled conjugation by a fixed 2x2 unitary.
pub fn scaled_conjugation2() -> MapDescription {
    map(find("scale2_conj").unwrap().raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ToleranceConfig;
    use num_complex::Complex64;

    #[test]
    fn artifacts_parse_and_have_their_shapes() {
        let nil = nilpotent2();
        assert_eq!(nil.dim(), 2);
        assert_eq!(nil[(0, 1)], Complex64::new(1.0, 0.0));
        assert!((&nil * &nil).frobenius_norm() == 0.0);

        let r = rank_one_positive();
        assert_eq!(r.dim(), 2);
        assert!((r[(0, 0)] - r[(1, 0)]).norm() == 0.0);
        assert_eq!(r[(0, 1)], Complex64::new(0.0, 0.0));

        let cfg = ToleranceConfig::default();
        assert_eq!(reciprocal_map().validate(&cfg).unwrap(), 1);
        assert_eq!(conjugation_haar4().validate(&cfg).unwrap(), 4);
        assert_eq!(anti_conjugation3().validate(&cfg).unwrap(), 3);
        assert_eq!(scaled_conjugation2().validate(&cfg).unwrap(), 2);
    }

    #[test]
    fn listing_is_complete_and_searchable() {
        assert_eq!(entries().len(), 6);
        assert!(find("nilpotent2").is_some());
        assert!(find("missing").is_none());
        for e in entries() {
            assert!(!e.summary.is_empty() && !e.expected.is_empty());
        }
    }
}
