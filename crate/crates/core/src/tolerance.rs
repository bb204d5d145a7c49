//! Numeric tolerances shared by validation, metrics and verification.

use serde::{Deserialize, Serialize};

/// Every tolerance the crate consults, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSet {
    /// Max distance of a face vertex from the face plane, relative to `max(1, face diameter)`.
    pub planarity: f64,
    /// Angular tolerance in radians (flat edges, parallel faces).
    pub angle: f64,
    /// Minimum edge length and isometry slack.
    pub length: f64,
    /// Allowed spread of the defect profile for closed-form meshes.
    pub defect: f64,
}

impl Default for ToleranceSet {
    fn default() -> Self {
        ToleranceSet {
            planarity: 1e-9,
            angle: 1e-9,
            length: 1e-12,
            defect: 1e-9,
        }
    }
}

impl ToleranceSet {
    /// Defect tolerance after `surgeries` chained surgery steps.
    pub fn defect_for_depth(&self, surgeries: u32) -> f64 {
        if surgeries == 0 {
            self.defect
        } else {
            self.defect.max(1e-6 * surgeries as f64)
        }
    }

    /// Same set with a different defect tolerance.
    pub fn with_defect(mut self, defect: f64) -> Self {
        self.defect = defect;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escalation() {
        let t = ToleranceSet::default();
        assert_eq!(t.defect_for_depth(0), 1e-9);
        assert_eq!(t.defect_for_depth(1), 1e-6);
        assert_eq!(t.defect_for_depth(4), 4e-6);
    }
}
