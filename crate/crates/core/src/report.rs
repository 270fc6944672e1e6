//! Plain-text tables for measured counts and oracle results.

use crate::error::SynthError;
use crate::oracle::{Basis, ImpossibilityRecord, LowWeightCensus};
use crate::synth::{full_encoder, growth_stage};

/// Closed-form per-stage CX count for `d → d+2`.
pub fn closed_form_stage_cx(d: usize) -> usize {
    if d % 2 == 1 {
        6 * d + 6
    } else {
        6 * d + 5
    }
}

pub fn closed_form_label(d: usize) -> &'static str {
    if d % 2 == 1 {
        "6d+6"
    } else {
        "6d+5"
    }
}

/// Depth of the previous local encoders.
pub fn prior_art_depth(d: usize) -> usize {
    2 * d
}

/// CX count per growth step of the previous local encoders.
pub fn prior_art_step_cx(d: usize) -> usize {
    8 * d + 4
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsRow {
    pub d: usize,
    pub depth: usize,
    pub expected_depth: usize,
    pub total_cx: usize,
    /// Base encoder first, then one entry per growth stage.
    pub stage_counts: Vec<usize>,
    /// CX count of the stage `(d-2) → d`, if `d` is reached by growth.
    pub last_stage_cx: Option<usize>,
    /// Measured CX count of the stage `d → d+2`.
    pub next_stage_cx: usize,
    pub next_stage_closed_form: usize,
    pub prior_depth: usize,
    pub prior_step_cx: usize,
}

impl StatsRow {
    pub fn closed_form_mismatch(&self) -> bool {
        self.next_stage_cx != self.next_stage_closed_form
    }

    /// Largest per-step CX count of this encoder, base included.
    pub fn max_step_cx(&self) -> usize {
        self.stage_counts.iter().copied().max().unwrap_or(0)
    }

    pub fn beats_prior_art(&self) -> bool {
        self.depth < self.prior_depth && self.max_step_cx() < self.prior_step_cx
    }
}

pub fn stats_row(d: usize) -> Result<StatsRow, SynthError> {
    let enc = full_encoder(d)?;
    let stage_counts = enc.stage_cx_counts();
    let last_stage_cx = (stage_counts.len() > 1).then(|| *stage_counts.last().unwrap());
    Ok(StatsRow {
        d,
        depth: enc.depth(),
        expected_depth: d + d % 2,
        total_cx: enc.two_qubit_count(),
        stage_counts,
        last_stage_cx,
        next_stage_cx: growth_stage(d)?.two_qubit_count(),
        next_stage_closed_form: closed_form_stage_cx(d),
        prior_depth: prior_art_depth(d),
        prior_step_cx: prior_art_step_cx(d),
    })
}

fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

pub fn stats_table(rows: &[StatsRow]) -> String {
    let header = [
        "d",
        "depth",
        "d+d%2",
        "total_cx",
        "per_stage",
        "last_stage",
        "next_stage",
        "closed_form",
        "check",
        "prior_depth",
        "prior_step_cx",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let stages: Vec<String> = r.stage_counts.iter().map(|c| c.to_string()).collect();
            vec![
                r.d.to_string(),
                r.depth.to_string(),
                r.expected_depth.to_string(),
                r.total_cx.to_string(),
                stages.join("+"),
                r.last_stage_cx.map_or("-".into(), |c| c.to_string()),
                r.next_stage_cx.to_string(),
                format!("{}={}", closed_form_label(r.d), r.next_stage_closed_form),
                if r.closed_form_mismatch() {
                    format!(
                        "MISMATCH({:+})",
                        r.next_stage_cx as i64 - r.next_stage_closed_form as i64
                    )
                } else {
                    "ok".into()
                },
                r.prior_depth.to_string(),
                r.prior_step_cx.to_string(),
            ]
        })
        .collect();
    let mut out = render(&header, &body);
    let flagged = rows.iter().filter(|r| r.closed_form_mismatch()).count();
    if flagged > 0 {
        out += &format!(
            "note: {flagged} row(s) where the measured next-stage CX count differs from the closed form\n"
        );
    }
    out
}

/// One oracle row: the census of distance `D` and, when `D ≥ 4`, the depth-1 verdict for
/// the stage `D-2 → D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRow {
    pub code_distance: usize,
    pub census: Option<LowWeightCensus>,
    pub record: ImpossibilityRecord,
}

pub fn oracle_table(rows: &[OracleRow]) -> String {
    let header = [
        "D",
        "n",
        "weight1",
        "weight2_elems",
        "weight2_rank",
        "2(D-1)",
        "required",
        "available",
        "basis",
        "depth1",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let big = r.code_distance;
            let rec = &r.record;
            let (w1, elems, rank) = match &r.census {
                Some(c) => (
                    c.weight1_count.to_string(),
                    c.weight2_elements.len().to_string(),
                    c.independent_weight2_rank.to_string(),
                ),
                None => ("-".into(), "-".into(), "-".into()),
            };
            let verdict = if big < 4 {
                "n/a".to_string()
            } else if rec.impossible {
                "impossible".to_string()
            } else {
                "not excluded".to_string()
            };
            let basis = match rec.basis {
                Basis::Census => "census",
                Basis::Arithmetic => "arithmetic",
            };
            vec![
                big.to_string(),
                (big * big).to_string(),
                w1,
                elems,
                rank,
                (2 * (big - 1)).to_string(),
                rec.required.to_string(),
                rec.available.to_string(),
                basis.to_string(),
                verdict,
            ]
        })
        .collect();
    render(&header, &body)
}
