//! Bounded checkers for minimality, effectiveness and simplicity.

mod cofinal;
mod cycles;
mod ex53;
mod fixed;
mod star;

use serde::Serialize;

pub use cofinal::check_g_cofinality;
pub use cycles::{
    check_entrances, cycle_infinite_path, entrance_witness, find_g_cycles, g_cycle_evidence,
    has_entrance, has_entrance_literal, is_g_cycle, GCycle,
};
pub use ex53::{
    closed_form_oracle, detect_ex53_shape, ex53_parameters, parity_criterion_ex53,
    ClosedFormOutcome, Ex53Shape,
};
pub use fixed::{fixed_point_cycle, fixed_points, interior_scan, FixClass, FixedPoints};
pub use star::{
    check_condition_star, check_paths_moved, fixes_all_paths, no_ultrafilter_check,
    strongly_fixed_prefix_check,
};

use crate::action::System;
use crate::verdict::{Bounds, Evidence, Status, Verdict};

/// Number of G-cycles listed in a report; the total is always given.
pub const G_CYCLE_LIST_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GCycleSummary {
    pub total: usize,
    pub listed: Vec<Evidence>,
    /// G-cycles on which the operative entrance test and the literal
    /// "another edge with the same range" test disagree.
    pub entrance_forms_disagree: Vec<Evidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Simplicity {
    NotApplicable { reason: String },
    Checked { verdict: Verdict },
}

impl Simplicity {
    pub fn status(&self) -> Option<Status> {
        match self {
            Simplicity::NotApplicable { .. } => None,
            Simplicity::Checked { verdict } => Some(verdict.status),
        }
    }
}

/// Every check run by [`analyze`]. The three headline verdicts are
/// sufficient conditions: `Fails` means the criterion does not apply, not
/// that the groupoid lacks the property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub validation: Verdict,
    pub g_cycles: GCycleSummary,
    pub entrances: Verdict,
    pub cofinal: Verdict,
    pub condition_star: Verdict,
    pub paths_moved: Verdict,
    pub minimal: Verdict,
    pub effective: Verdict,
    pub simple: Simplicity,
}

impl Analysis {
    /// 0 when everything holds, 2 on any failure, 3 on any unknown.
    pub fn exit_code(&self) -> i32 {
        let mut statuses = vec![
            self.validation.status,
            self.minimal.status,
            self.effective.status,
        ];
        statuses.extend(self.simple.status());
        if statuses.contains(&Status::Fails) {
            2
        } else if statuses.contains(&Status::Unknown) {
            3
        } else {
            0
        }
    }
}

fn skipped() -> Verdict {
    Verdict::unknown(vec![Evidence::Note {
        text: "skipped: the system did not validate".into(),
    }])
}

pub fn analyze(sys: &System, bounds: &Bounds) -> Analysis {
    let validation = sys.validate(bounds.group_ball_radius);
    if !validation.is_holds() {
        return Analysis {
            validation,
            g_cycles: GCycleSummary {
                total: 0,
                listed: vec![],
                entrance_forms_disagree: vec![],
            },
            entrances: skipped(),
            cofinal: skipped(),
            condition_star: skipped(),
            paths_moved: skipped(),
            minimal: skipped(),
            effective: skipped(),
            simple: Simplicity::NotApplicable {
                reason: "the system did not validate".into(),
            },
        };
    }
    let cycles = find_g_cycles(sys, bounds).unwrap_or_default();
    let disagree: Vec<Evidence> = cycles
        .iter()
        .filter(|c| has_entrance(sys, c) != has_entrance_literal(sys, c))
        .take(G_CYCLE_LIST_CAP)
        .map(|c| g_cycle_evidence(sys, c))
        .collect();
    let g_cycles = GCycleSummary {
        total: cycles.len(),
        listed: cycles
            .iter()
            .take(G_CYCLE_LIST_CAP)
            .map(|c| g_cycle_evidence(sys, c))
            .collect(),
        entrance_forms_disagree: disagree,
    };
    let entrances = check_entrances(sys, bounds);
    let cofinal = check_g_cofinality(sys, bounds);
    let condition_star = check_condition_star(sys, bounds);
    let paths_moved = check_paths_moved(sys, bounds);
    let minimal = cofinal.clone();
    let effective = Verdict::all([entrances.clone(), condition_star.clone()]);
    let simple = if !sys.is_trivial_cocycle() {
        Simplicity::NotApplicable {
            reason: "the cocycle is not trivial".into(),
        }
    } else if !sys.amenable() {
        Simplicity::NotApplicable {
            reason: "the group is not marked amenable".into(),
        }
    } else {
        Simplicity::Checked {
            verdict: Verdict::all([cofinal.clone(), entrances.clone(), paths_moved.clone()]),
        }
    };
    Analysis {
        validation,
        g_cycles,
        entrances,
        cofinal,
        condition_star,
        paths_moved,
        minimal,
        effective,
        simple,
    }
}
