//! Wire formats: graph spec strings, matrix files, structure JSON and CSV.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{make_graph, Family, Graph};
use crate::linalg::IntMatrix;
use crate::structure::{ArithStructure, StructureSet};

/// Serializes a `BigInt` as a bare JSON number.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums = v
        .iter()
        .map(|x| x.to_string().parse::<serde_json::Number>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(serde::ser::Error::custom)?;
    nums.serialize(s)
}

/// Parses `family:N` or `file:PATH`.
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("graph spec '{spec}' is not of the form family:N or file:PATH")))?;
    if kind == "file" {
        return Graph::from_adjacency(load_matrix(arg)?);
    }
    let family: Family = kind.parse()?;
    let n: usize = arg
        .parse()
        .map_err(|_| Error::Parse(format!("graph size '{arg}' is not a non-negative integer")))?;
    if n < family.min_size() {
        return Err(Error::Parse(format!(
            "{family} needs n >= {}, got {n}",
            family.min_size()
        )));
    }
    make_graph(family, n)
}

/// Reads a matrix JSON file `{"n": k, "rows": [...]}`.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<IntMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::File(format!("{}: {e}", path.display())))?;
    parse_matrix_json(&text)
}

pub fn parse_matrix_json(text: &str) -> Result<IntMatrix> {
    let json: crate::linalg::MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidMatrix(e.to_string()))?;
    IntMatrix::try_from(&json)
}

/// Comma-separated integers, e.g. `1,6,2,3`. Whitespace around entries is ignored.
pub fn parse_int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.parse()
                .map_err(|_| Error::Parse(format!("'{x}' is not a valid integer in list '{s}'")))
        })
        .collect()
}

#[derive(Serialize)]
struct SetJson<'a> {
    graph: &'a str,
    complete: bool,
    r_cap: Option<u64>,
    count: usize,
    structures: &'a [ArithStructure],
}

pub fn structure_set_json(set: &StructureSet) -> String {
    let payload = SetJson {
        graph: &set.graph_spec,
        complete: set.complete,
        r_cap: set.r_cap,
        count: set.len(),
        structures: &set.structures,
    };
    serde_json::to_string_pretty(&payload).expect("structure set serializes")
}

pub fn structure_json(s: &ArithStructure) -> String {
    serde_json::to_string(s).expect("structure serializes")
}

pub fn parse_structure_json(text: &str) -> Result<ArithStructure> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("structure JSON: {e}")))
}

/// CSV with header `d0,..,d{n-1},r0,..,r{n-1}`, one structure per row.
pub fn structure_set_csv(set: &StructureSet) -> Result<String> {
    let n = set.adjacency.dim();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header: Vec<String> = (0..n)
        .map(|i| format!("d{i}"))
        .chain((0..n).map(|i| format!("r{i}")))
        .collect();
    let io_err = |e: csv::Error| Error::File(e.to_string());
    w.write_record(&header).map_err(io_err)?;
    for s in set.iter() {
        w.write_record(s.d.iter().chain(&s.r).map(|x| x.to_string()))
            .map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::File(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}
