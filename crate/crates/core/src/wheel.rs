//! Wheel-specific classification of structures.
//!
//! On `W_n` (hub `v0`, rim `v1..vn`) a structure other than the all-ones one falls in exactly
//! one of three cases, split by how the hub value `d_0` compares with the hub degree `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{make_graph, Family, Graph};
use crate::structure::r_from_d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WheelCase {
    /// `r` is all ones (the degree structure).
    AllOnes,
    /// `d_0 > n` and some rim `d_i < 3`.
    Case1,
    /// `d_0 < n` and some rim `d_i > 3`.
    Case2,
    /// `d_0 = n` and rim indices `i != j` with `d_i < 3 < d_j`.
    Case3,
}

impl WheelCase {
    pub fn name(self) -> &'static str {
        match self {
            WheelCase::AllOnes => "all-ones",
            WheelCase::Case1 => "case1",
            WheelCase::Case2 => "case2",
            WheelCase::Case3 => "case3",
        }
    }
}

/// Classifies the structure on `W_n` determined by `d`.
///
/// Holds for every `n >= 3`: if `d_0 > n` every rim `d_i >= 3` would make `r_0` strictly
/// smaller than each rim entry and contradict `d_0 r_0 = sum r_i`, and symmetrically for the
/// other two cases. A `d` that fits none of them is reported as a `PreconditionViolation`.
pub fn classify_wheel_structure(n: usize, d: &[u64]) -> Result<WheelCase> {
    let wheel = make_graph(Family::Wheel, n)?;
    let r = r_from_d(wheel.adjacency(), d)
        .ok_or_else(|| Error::NotAStructure(format!("d = {d:?} has no positive kernel vector on wheel:{n}")))?;
    if r.iter().all(|&x| x == 1) {
        return Ok(WheelCase::AllOnes);
    }
    let hub = d[0];
    let rim = &d[1..];
    let n64 = n as u64;
    let below = rim.iter().any(|&x| x < 3);
    let above = rim.iter().any(|&x| x > 3);
    // below and above are witnessed by distinct rim indices, since no entry is both
    let case = if hub > n64 && below {
        Some(WheelCase::Case1)
    } else if hub < n64 && above {
        Some(WheelCase::Case2)
    } else if hub == n64 && below && above {
        Some(WheelCase::Case3)
    } else {
        None
    };
    case.ok_or_else(|| {
        Error::PreconditionViolation(format!(
            "structure d = {d:?}, r = {r:?} on wheel:{n} fits none of the three cases"
        ))
    })
}

/// True iff no two vertices with `d = 1` are adjacent.
pub fn check_unit_d_neighbors(graph: &Graph, d: &[u64]) -> bool {
    d.len() == graph.order()
        && (0..graph.order())
            .filter(|&v| d[v] == 1)
            .all(|v| graph.neighbors(v).iter().all(|&u| d[u] > 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(classify_wheel_structure(3, &[3, 3, 3, 3]).unwrap(), WheelCase::AllOnes);
        assert_eq!(classify_wheel_structure(5, &[5, 3, 3, 3, 3, 3]).unwrap(), WheelCase::AllOnes);
        // (11,1,5,3) with r = (1,6,2,3)
        assert_eq!(classify_wheel_structure(3, &[11, 1, 5, 3]).unwrap(), WheelCase::Case1);
        // (1,5,5,5) with r = (3,1,1,1)
        assert_eq!(classify_wheel_structure(3, &[1, 5, 5, 5]).unwrap(), WheelCase::Case2);
        // r = (4,1,1,1,1) on W4: hub 1, rim 6
        assert_eq!(classify_wheel_structure(4, &[1, 6, 6, 6, 6]).unwrap(), WheelCase::Case2);
        assert!(matches!(
            classify_wheel_structure(3, &[9, 9, 9, 9]),
            Err(Error::NotAStructure(_))
        ));
    }

    #[test]
    fn case_three_on_w4() {
        // every small structure with hub value 4
        let w4 = make_graph(Family::Wheel, 4).unwrap();
        let mut found = false;
        for r in 1..=6u64 {
            for a in 1..=6u64 {
                for b in 1..=6u64 {
                    for c in 1..=6u64 {
                        for e in 1..=6u64 {
                            let rv = [r, a, b, c, e];
                            if let Some(d) = crate::structure::d_from_r(w4.adjacency(), &rv) {
                                if d[0] == 4 && rv.iter().any(|&x| x != 1) {
                                    assert_eq!(classify_wheel_structure(4, &d).unwrap(), WheelCase::Case3);
                                    found = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn unit_neighbors() {
        let w3 = make_graph(Family::Wheel, 3).unwrap();
        assert!(check_unit_d_neighbors(&w3, &[11, 1, 5, 3]));
        assert!(check_unit_d_neighbors(&w3, &[3, 3, 3, 3]));
        assert!(!check_unit_d_neighbors(&w3, &[1, 1, 5, 3]));
    }
}
