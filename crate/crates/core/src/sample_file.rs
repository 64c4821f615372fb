//! Line-oriented text format for samples.
//!
//! ```text
//! #graphsize-sample v1 method=rw seed=42 weight_rule=degree graph_digest=9f2c0a1b7e3d5566 rng=chacha8 n=3
//! 0 17 3 3 0 4,9,22
//! 1 9 2 2 0 17,40
//! 2 40 1 1 0 9
//! ```
//!
//! The header is a single line of space-separated `key=value` pairs after the
//! `#graphsize-sample v1` tag; an optional `thinning=THETA:OFFSET` pair marks
//! thinned subsamples. Each following line is one record with six
//! space-separated fields: position, external node id, degree, weight,
//! walker id, and the comma-separated neighbor ids (`-` when the node has no
//! neighbors). Weights use the shortest representation that parses back to
//! the same `f64`. Every line ends with `\n`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::sample::{Sample, SampleBuilder, SampleMeta, Thinning};

pub const HEADER_TAG: &str = "#graphsize-sample v1";

pub fn write_sample<W: Write>(sample: &Sample, mut out: W) -> Result<()> {
    let m = sample.meta();
    write!(
        out,
        "{HEADER_TAG} method={} seed={} weight_rule={} graph_digest={} rng={} n={}",
        m.method,
        m.seed,
        m.weight_rule,
        if m.graph_digest.is_empty() { "-" } else { &m.graph_digest },
        m.rng,
        sample.len()
    )?;
    if let Some(t) = m.thinning {
        write!(out, " thinning={}:{}", t.theta, t.offset)?;
    }
    writeln!(out)?;
    let mut line = String::new();
    for r in sample.records() {
        line.clear();
        use std::fmt::Write as _;
        let _ = write!(line, "{} {} {} {} {} ", r.position, r.node, r.degree, r.weight, r.walker);
        let nb = sample.record_neighbors(r);
        if nb.is_empty() {
            line.push('-');
        }
        for (i, u) in nb.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            let _ = write!(line, "{u}");
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| parse_err(line, format!("invalid {name} {raw:?}")))
}

pub fn read_sample<R: BufRead>(source: R) -> Result<Sample> {
    let mut lines = source.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "missing header"))??;
    let rest = header
        .strip_prefix(HEADER_TAG)
        .ok_or_else(|| parse_err(1, format!("header must start with {HEADER_TAG:?}")))?;

    let mut method = None;
    let mut seed = None;
    let mut weight_rule = None;
    let mut digest = None;
    let mut rng = None;
    let mut n = None;
    let mut thinning = None;
    for pair in rest.split_whitespace() {
        let (k, v) = pair.split_once('=').ok_or_else(|| parse_err(1, format!("expected key=value, got {pair:?}")))?;
        match k {
            "method" => method = Some(v.parse()?),
            "seed" => seed = Some(field::<u64>(1, "seed", v)?),
            "weight_rule" => weight_rule = Some(v.to_string()),
            "graph_digest" => digest = Some(if v == "-" { String::new() } else { v.to_string() }),
            "rng" => rng = Some(v.to_string()),
            "n" => n = Some(field::<usize>(1, "n", v)?),
            "thinning" => {
                let (t, o) = v.split_once(':').ok_or_else(|| parse_err(1, "thinning must be THETA:OFFSET"))?;
                thinning = Some(Thinning { theta: field(1, "theta", t)?, offset: field(1, "offset", o)? });
            }
            _ => return Err(parse_err(1, format!("unknown header key {k:?}"))),
        }
    }
    let missing = |k: &str| parse_err(1, format!("header lacks {k}"));
    let mut meta = SampleMeta::new(
        method.ok_or_else(|| missing("method"))?,
        seed.ok_or_else(|| missing("seed"))?,
        &weight_rule.ok_or_else(|| missing("weight_rule"))?,
        &digest.unwrap_or_default(),
    );
    meta.rng = rng.ok_or_else(|| missing("rng"))?;
    meta.thinning = thinning;
    let n = n.ok_or_else(|| missing("n"))?;

    let mut b = SampleBuilder::with_capacity(meta, n);
    let mut neighbors: Vec<NodeId> = Vec::new();
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 6 {
            return Err(parse_err(lineno, format!("expected 6 fields, found {}", cols.len())));
        }
        let position: usize = field(lineno, "position", cols[0])?;
        if position != count {
            return Err(parse_err(lineno, format!("position {position} out of sequence (expected {count})")));
        }
        let node: NodeId = field(lineno, "node id", cols[1])?;
        let degree: usize = field(lineno, "degree", cols[2])?;
        let weight: f64 = field(lineno, "weight", cols[3])?;
        let walker: usize = field(lineno, "walker", cols[4])?;
        neighbors.clear();
        if cols[5] != "-" {
            for tok in cols[5].split(',') {
                neighbors.push(field(lineno, "neighbor id", tok)?);
            }
        }
        if neighbors.len() != degree {
            return Err(parse_err(lineno, format!("degree {degree} but {} neighbors", neighbors.len())));
        }
        b.push(node, weight, walker, &neighbors).map_err(|e| parse_err(lineno, e.to_string()))?;
        count += 1;
    }
    if count != n {
        return Err(parse_err(count + 1, format!("header declares n={n} but {count} records follow")));
    }
    Ok(b.build())
}
