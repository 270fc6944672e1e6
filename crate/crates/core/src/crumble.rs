//! The Crumble circuit text dialect.
//!
//! Statements are `;`-separated: `Q(r,c)i` declares qubit `i` at grid position
//! `(r,c)`, `R_…`/`RX_…`/`S_DAG_…`/`CX_…` apply gates to `_`-joined qubit lists,
//! `MARKX(k)…`/`MARKZ(k)…` attach annotations, and `TICK` starts a new layer.
//! A payload may also be given as a full `…#circuit=` URL, percent-encoded, with
//! the `#` optionally backslash-escaped.
//!
//! Emission is canonical: qubit declarations by index, then every layer with its
//! gates grouped by kind (`R`, `RX`, `S_DAG`, `CX`) and sorted by minimum qubit
//! index, followed by its markers in their original order.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use percent_encoding::percent_decode_str;

use crate::circuit::{Circuit, Gate, Layer, Marker, MarkerBasis};
use crate::code::Coord;
use crate::error::{ParseError, ParseErrorKind};

/// Strips a URL prefix and percent-decoding, leaving the bare statement list.
pub fn decode_payload(input: &str) -> Result<String, ParseError> {
    let trimmed = input.trim();
    let unescaped = trimmed.replace("\\#", "#");
    let body = match unescaped.find("#circuit=") {
        Some(pos) => &unescaped[pos + "#circuit=".len()..],
        None => unescaped.as_str(),
    };
    percent_decode_str(body)
        .decode_utf8()
        .map(|s| s.into_owned())
        .map_err(|_| ParseError {
            offset: 0,
            kind: ParseErrorKind::Encoding,
        })
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

fn parse_usize(s: &str, offset: usize, stmt: &str) -> Result<usize, ParseError> {
    s.parse()
        .map_err(|_| err(offset, ParseErrorKind::Malformed(stmt.to_string())))
}

fn parse_args(s: &str, offset: usize, stmt: &str) -> Result<Vec<usize>, ParseError> {
    if s.is_empty() {
        return Err(err(offset, ParseErrorKind::Malformed(stmt.to_string())));
    }
    s.split('_').map(|a| parse_usize(a, offset, stmt)).collect()
}

/// `Q(r,c)i`
fn parse_declaration(stmt: &str, offset: usize) -> Result<(usize, Coord), ParseError> {
    let malformed = || err(offset, ParseErrorKind::Malformed(stmt.to_string()));
    let inner = stmt.strip_prefix("Q(").ok_or_else(malformed)?;
    let (pos, index) = inner.split_once(')').ok_or_else(malformed)?;
    let (r, c) = pos.split_once(',').ok_or_else(malformed)?;
    Ok((
        parse_usize(index, offset, stmt)?,
        Coord::new(parse_usize(r, offset, stmt)?, parse_usize(c, offset, stmt)?),
    ))
}

/// `MARKX(k)a_b_c`
fn parse_marker(stmt: &str, offset: usize) -> Result<Marker, ParseError> {
    let malformed = || err(offset, ParseErrorKind::Malformed(stmt.to_string()));
    let (basis, rest) = if let Some(rest) = stmt.strip_prefix("MARKX(") {
        (MarkerBasis::X, rest)
    } else if let Some(rest) = stmt.strip_prefix("MARKZ(") {
        (MarkerBasis::Z, rest)
    } else {
        return Err(malformed());
    };
    let (index, qubits) = rest.split_once(')').ok_or_else(malformed)?;
    Ok(Marker {
        basis,
        index: parse_usize(index, offset, stmt)?,
        qubits: parse_args(qubits, offset, stmt)?,
    })
}

pub fn parse_text(input: &str) -> Result<Circuit, ParseError> {
    let payload = decode_payload(input)?;
    let mut coords: BTreeMap<usize, Coord> = BTreeMap::new();
    let mut layers: Vec<(Vec<Gate>, Vec<Marker>)> = vec![(Vec::new(), Vec::new())];
    let mut touched: HashSet<usize> = HashSet::new();
    let mut offset = 0;

    for raw in payload.split(';') {
        let start = offset + (raw.len() - raw.trim_start().len());
        offset += raw.len() + 1;
        let stmt = raw.trim();
        if stmt.is_empty() {
            continue;
        }
        if stmt == "TICK" {
            layers.push((Vec::new(), Vec::new()));
            touched.clear();
            continue;
        }
        if stmt.starts_with("Q(") {
            let (index, coord) = parse_declaration(stmt, start)?;
            if coords.insert(index, coord).is_some() {
                return Err(err(start, ParseErrorKind::Redeclared(index)));
            }
            continue;
        }
        if stmt.starts_with("MARK") {
            let marker = parse_marker(stmt, start)?;
            if let Some(&q) = marker.qubits.iter().find(|q| !coords.contains_key(q)) {
                return Err(err(start, ParseErrorKind::Undeclared(q)));
            }
            layers.last_mut().unwrap().1.push(marker);
            continue;
        }
        let (name, args) = if let Some(rest) = stmt.strip_prefix("S_DAG_") {
            ("S_DAG", rest)
        } else {
            match stmt.split_once('_') {
                Some((name, rest)) => (name, rest),
                None => return Err(err(start, ParseErrorKind::UnknownToken(stmt.to_string()))),
            }
        };
        if !matches!(name, "R" | "RX" | "CX" | "S_DAG") {
            return Err(err(start, ParseErrorKind::UnknownToken(name.to_string())));
        }
        let args = parse_args(args, start, stmt)?;
        for &q in &args {
            if !coords.contains_key(&q) {
                return Err(err(start, ParseErrorKind::Undeclared(q)));
            }
            if !touched.insert(q) {
                if name == "CX"
                    && args
                        .chunks(2)
                        .any(|p| p.len() == 2 && p[0] == p[1] && p[0] == q)
                {
                    return Err(err(start, ParseErrorKind::SelfCx(q)));
                }
                return Err(err(start, ParseErrorKind::DuplicateInLayer(q)));
            }
        }
        let gates = &mut layers.last_mut().unwrap().0;
        match name {
            "R" => gates.extend(args.iter().map(|&q| Gate::ResetZ(q))),
            "RX" => gates.extend(args.iter().map(|&q| Gate::ResetX(q))),
            "S_DAG" => gates.extend(args.iter().map(|&q| Gate::SDag(q))),
            _ => {
                if args.len() % 2 != 0 {
                    return Err(err(start, ParseErrorKind::OddCxArgs));
                }
                gates.extend(args.chunks(2).map(|p| Gate::cx(p[0], p[1])));
            }
        }
    }

    let n = coords.len();
    if let Some(missing) = (0..n).find(|i| !coords.contains_key(i)) {
        return Err(err(payload.len(), ParseErrorKind::Gap(missing)));
    }
    let layers = layers
        .into_iter()
        .map(|(g, m)| Layer::new(g).with_markers(m))
        .collect();
    let circuit = Circuit::new(coords.into_values().collect(), layers, None)
        .map_err(|e| err(payload.len(), ParseErrorKind::Malformed(e.to_string())))?;
    let input = circuit.infer_input_qubit();
    circuit
        .with_input_qubit(input)
        .map_err(|e| err(payload.len(), ParseErrorKind::Malformed(e.to_string())))
}

fn push_layer(out: &mut Vec<String>, layer: &Layer) {
    let gates = layer.gates();
    let mut i = 0;
    while i < gates.len() {
        let token = gates[i].token();
        let mut stmt = token.to_string();
        while i < gates.len() && gates[i].token() == token {
            for q in gates[i].qubits() {
                let _ = write!(stmt, "_{q}");
            }
            i += 1;
        }
        out.push(stmt);
    }
    for m in layer.markers() {
        let basis = match m.basis {
            MarkerBasis::X => 'X',
            MarkerBasis::Z => 'Z',
        };
        let qubits: Vec<String> = m.qubits.iter().map(|q| q.to_string()).collect();
        out.push(format!("MARK{basis}({}){}", m.index, qubits.join("_")));
    }
}

/// Canonical text for a circuit, without a trailing newline.
pub fn emit_text(circuit: &Circuit) -> String {
    let mut stmts: Vec<String> = circuit
        .qubit_coords()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("Q({},{}){i}", c.row, c.col))
        .collect();
    for (li, layer) in circuit.layers().iter().enumerate() {
        if li > 0 {
            stmts.push("TICK".to_string());
        }
        push_layer(&mut stmts, layer);
    }
    stmts.join(";")
}

/// A Crumble link opening the circuit.
pub fn to_url(circuit: &Circuit) -> String {
    format!(
        "https://algassert.com/crumble#circuit={}",
        emit_text(circuit)
    )
}

/// Line-oriented records for external tooling:
///
/// ```text
/// qubits 4
/// qubit 0 0 0
/// input 0
/// layer 0
/// R 1
/// CX 2 3
/// ```
pub fn export_records(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", circuit.n());
    for (i, c) in circuit.qubit_coords().iter().enumerate() {
        let _ = writeln!(out, "qubit {i} {} {}", c.row, c.col);
    }
    if let Some(q) = circuit.input_qubit() {
        let _ = writeln!(out, "input {q}");
    }
    for (li, layer) in circuit.layers().iter().enumerate() {
        let _ = writeln!(out, "layer {li}");
        for g in layer.gates() {
            let qs: Vec<String> = g.qubits().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "{} {}", g.token(), qs.join(" "));
        }
    }
    out
}
