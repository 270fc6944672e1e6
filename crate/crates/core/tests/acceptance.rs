//! Acceptance criteria, one line each. Runs as a plain binary so the lines always show.

mod support;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use support::{ket_one, ket_plus, ket_zero, StateVector};
use surfgrow::flow::{logical_frame_of_chain, FlowState};
use surfgrow::oracle::{
    depth1_growth_impossible, depth1_growth_impossible_capped, low_weight_census,
};
use surfgrow::report::{stats_row, stats_table};
use surfgrow::synth::{canonical_stage, canonical_stages, Parity};
use surfgrow::{
    base_encoder, build_code, emit_text, full_encoder, growth_stage, pattern_from_instances, rank,
    verify_encoding,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("golden")
        .join(name);
    fs::read_to_string(path).expect("golden file present")
}

fn golden_reproduction() -> Check {
    for (d, name) in [(2, "base_d2.crum.txt"), (3, "base_d3.crum.txt")] {
        let got = emit_text(&full_encoder(d).map_err(|e| e.to_string())?) + "\n";
        ensure(got == golden(name), || {
            format!("encoder d={d} differs from {name}")
        })?;
    }
    for (d, name) in [
        (3, "stage_3_to_5.crum.txt"),
        (5, "stage_5_to_7.crum.txt"),
        (2, "stage_2_to_4.crum.txt"),
        (4, "stage_4_to_6.crum.txt"),
    ] {
        let stage = growth_stage(d).map_err(|e| e.to_string())?;
        ensure(stage == canonical_stage(d).unwrap(), || {
            format!("stage {d}->{} differs from link", d + 2)
        })?;
        ensure(emit_text(&stage) + "\n" == golden(name), || {
            format!("stage differs from {name}")
        })?;
    }
    for parity in [Parity::Odd, Parity::Even] {
        let stages = canonical_stages(parity).unwrap();
        let pattern = pattern_from_instances(&stages).map_err(|e| e.to_string())?;
        for s in &stages {
            let size = (s.n() as f64).sqrt() as usize;
            ensure(pattern.instantiate(size).unwrap() == *s, || {
                format!("{parity} pattern at {size}")
            })?;
        }
    }
    Ok("2 base encoders and 4 stages gate-exact".into())
}

fn encoding_correctness() -> Check {
    for d in 2..=15 {
        let cert = verify_encoding(&full_encoder(d).unwrap(), &build_code(d).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(cert.group_match && cert.sign_match, || {
            format!("d={d}: {cert:?}")
        })?;
        ensure(
            cert.tracked_stabilizers == d * d - 1 && cert.logicals_ok,
            || format!("d={d}: logicals"),
        )?;
    }
    Ok("group_match and sign_match for d=2..=15".into())
}

fn depth_formula() -> Check {
    for d in 2..=25 {
        let depth = full_encoder(d).unwrap().depth();
        ensure(depth == d + d % 2, || format!("d={d}: depth {depth}"))?;
    }
    for d in 2..=23 {
        let s = growth_stage(d).unwrap();
        let cx_layers = s.layers().iter().filter(|l| l.cx_count() > 0).count();
        ensure(s.depth() == 2 && cx_layers == 2, || {
            format!("stage {d}: depth {}", s.depth())
        })?;
    }
    Ok("depth = d + d%2 for d=2..=25, every stage depth 2".into())
}

fn locality() -> Check {
    let mut cx = 0;
    for d in 2..=25 {
        let c = full_encoder(d).unwrap();
        let v = c.check_locality();
        ensure(v.is_empty(), || {
            format!("d={d}: {} violations, first {:?}", v.len(), v[0])
        })?;
        cx += c.two_qubit_count();
    }
    Ok(format!("0 violations over {cx} CX gates"))
}

fn dense_equivalence() -> Check {
    let mut checked = 0;
    for d in [2, 3] {
        let c = base_encoder(d).unwrap();
        let mut flow = FlowState::for_input(c.n(), c.input_qubit().unwrap());
        flow.run(&c, true).map_err(|e| e.to_string())?;
        ensure(rank(flow.stabilizers()).unwrap() == c.n() - 1, || {
            format!("d={d}: rank")
        })?;
        let lx = flow.logical_x().unwrap().clone();
        let lz = flow.logical_z().unwrap().clone();
        for (name, psi, extra) in [
            ("|0>", ket_zero(), lz.clone()),
            ("|1>", ket_one(), lz.negated()),
            ("|+>", ket_plus(), lx),
        ] {
            let s = StateVector::run(&c, psi);
            for g in flow.stabilizers() {
                ensure(s.stabilized_by(g), || {
                    format!("d={d} {name}: not stabilized by {g}")
                })?;
                ensure(!s.stabilized_by(&g.clone().negated()), || {
                    format!("d={d} {name}: sign of {g}")
                })?;
                checked += 1;
            }
            ensure(s.stabilized_by(&extra), || {
                format!("d={d} {name}: logical image {extra}")
            })?;
        }
    }
    Ok(format!(
        "{checked} generator checks at tolerance {:e}",
        support::TOL
    ))
}

fn optimality_oracle() -> Check {
    let mut ranks = Vec::new();
    for big in 2..=8 {
        let c = low_weight_census(&build_code(big).unwrap()).map_err(|e| e.to_string())?;
        ensure(c.weight1_count == 0, || {
            format!("D={big}: {} weight-1 elements", c.weight1_count)
        })?;
        let r = c.independent_weight2_rank;
        ensure(r <= 2 * (big - 1), || {
            format!("D={big}: weight-2 rank {r} > {}", 2 * (big - 1))
        })?;
        ranks.push(format!("{big}:{r}"));
    }
    for d in 2..=6 {
        let rec = depth1_growth_impossible(d).map_err(|e| e.to_string())?;
        ensure(rec.impossible, || format!("d={d}: {rec:?}"))?;
    }
    for d in 7..=25 {
        let rec = depth1_growth_impossible_capped(d, 8).map_err(|e| e.to_string())?;
        ensure(rec.impossible, || format!("d={d}: {rec:?}"))?;
    }
    Ok(format!(
        "weight-2 ranks {}; depth-1 impossible for d=2..=25",
        ranks.join(" ")
    ))
}

fn frame_stability() -> Check {
    let mut frames = Vec::new();
    for parity in [0, 1] {
        let first = logical_frame_of_chain(2 + parity)
            .map_err(|e| e.to_string())?
            .ok_or("frame unresolved")?;
        for d in (2 + parity..=15).step_by(2) {
            let f = logical_frame_of_chain(d).map_err(|e| e.to_string())?;
            ensure(f == Some(first), || format!("d={d}: {f:?} vs {first}"))?;
        }
        frames.push(format!(
            "{}: {first}",
            if parity == 0 { "even" } else { "odd" }
        ));
    }
    Ok(frames.join("; "))
}

fn count_reporting() -> Check {
    let rows: Vec<_> = (3..=6).map(|d| stats_row(d).unwrap()).collect();
    let decoded = |d| canonical_stage(d).unwrap().two_qubit_count();
    let expect = [(3, 20), (5, 32), (2, 14), (4, 26)];
    for (s, count) in expect {
        ensure(decoded(s) == count, || {
            format!("decoded {s}->{}: {}", s + 2, decoded(s))
        })?;
    }
    let row = |d: usize| &rows[d - 3];
    ensure(
        row(3).next_stage_cx == 20 && row(5).last_stage_cx == Some(20),
        || "3->5".into(),
    )?;
    ensure(row(5).next_stage_cx == 32, || "5->7".into())?;
    ensure(row(4).last_stage_cx == Some(14), || "2->4".into())?;
    ensure(
        row(4).next_stage_cx == 26 && row(6).last_stage_cx == Some(26),
        || "4->6".into(),
    )?;
    let table = stats_table(&rows);
    ensure(table.contains("6d+6") && table.contains("6d+5"), || {
        "closed forms missing".into()
    })?;
    let mut flagged = Vec::new();
    for (line, r) in table.lines().skip(2).zip(&rows) {
        ensure(
            line.contains("MISMATCH") == r.closed_form_mismatch(),
            || format!("flag on row {}", r.d),
        )?;
        if r.closed_form_mismatch() {
            flagged.push(format!(
                "d={} {} vs {}",
                r.d, r.next_stage_cx, r.next_stage_closed_form
            ));
        }
    }
    Ok(format!(
        "decoded 20/32/14/26 shown; flagged against closed form: {}",
        flagged.join(", ")
    ))
}

fn gate_count_superiority() -> Check {
    for d in (3..=25).step_by(2) {
        let c = full_encoder(d).unwrap();
        ensure(c.depth() < 2 * d, || {
            format!("d={d}: depth {} >= {}", c.depth(), 2 * d)
        })?;
        // Entry k is the base encoder (k = 0) or the stage from distance 3 + 2(k-1).
        for (k, &count) in c.stage_cx_counts().iter().enumerate() {
            let s = if k == 0 { 3 } else { 3 + 2 * (k - 1) };
            ensure(count < 8 * s + 4, || {
                format!("d={d}: step {k} uses {count} >= {}", 8 * s + 4)
            })?;
        }
    }
    Ok("odd d=3..=25: depth < 2d and every step below 8d+4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "golden reproduction",
            golden_reproduction,
            Duration::from_secs(1),
        ),
        (
            "encoding correctness",
            encoding_correctness,
            Duration::from_secs(10),
        ),
        ("depth formula", depth_formula, Duration::MAX),
        ("locality", locality, Duration::MAX),
        ("dense-oracle equivalence", dense_equivalence, Duration::MAX),
        (
            "optimality oracle",
            optimality_oracle,
            Duration::from_secs(30),
        ),
        ("logical frame stability", frame_stability, Duration::MAX),
        ("count reporting", count_reporting, Duration::MAX),
        (
            "gate-count superiority",
            gate_count_superiority,
            Duration::MAX,
        ),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > *budget => {
                Err(format!("{msg}; took {elapsed:?}, budget {budget:?}"))
            }
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}) [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({msg}) [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
