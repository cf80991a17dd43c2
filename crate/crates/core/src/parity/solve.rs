use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::constraint::ConstraintSystem;

/// Widest universe handled by elimination (one `u64` row per constraint).
pub const MAX_ELIMINATION_VARS: usize = 64;
/// Widest universe handled by brute-force enumeration.
pub const MAX_ENUMERATION_VARS: usize = 20;

/// A ±1 value for every variable of the universe, in universe order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub values: Vec<(String, i8)>,
}

impl Assignment {
    pub fn get(&self, variable: &str) -> Option<i8> {
        self.values
            .iter()
            .find(|(v, _)| v == variable)
            .map(|(_, x)| *x)
    }

    /// Direct evaluation of every product.
    pub fn satisfies(&self, system: &ConstraintSystem) -> bool {
        system.constraints().iter().all(|c| {
            let product: i8 = c
                .variables
                .iter()
                .map(|v| self.get(v).unwrap_or(0))
                .product();
            product == c.rhs
        })
    }
}

/// Constraints (0-based indices) whose GF(2) sum is `0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnsatCertificate {
    pub indices: Vec<usize>,
}

impl UnsatCertificate {
    /// 1-based constraint numbers.
    pub fn numbers(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    /// Sums the certificate rows: the variable part must cancel and the
    /// parity bit must be 1.
    pub fn verify(&self, system: &ConstraintSystem) -> bool {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        let mut parity = false;
        for &i in &self.indices {
            let Some(c) = system.constraints().get(i) else {
                return false;
            };
            for v in &c.variables {
                *counts.entry(v.as_str()).or_default() += 1;
            }
            parity ^= c.rhs_bit();
        }
        parity && counts.values().all(|n| n % 2 == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Satisfiability {
    Sat {
        witness: Assignment,
        rank: usize,
    },
    Unsat {
        certificate: UnsatCertificate,
        rank: usize,
    },
}

impl Satisfiability {
    pub fn is_sat(&self) -> bool {
        matches!(self, Satisfiability::Sat { .. })
    }

    pub fn rank(&self) -> usize {
        match self {
            Satisfiability::Sat { rank, .. } | Satisfiability::Unsat { rank, .. } => *rank,
        }
    }
}

struct Row {
    vars: u64,
    rhs: bool,
    origin: FixedBitSet,
}

/// Gauss-Jordan elimination over GF(2).
///
/// Satisfiable systems yield one witness with every free variable set to +1.
/// Otherwise the certificate is the set of original constraints that combine
/// into the first all-zero row with parity 1.
pub fn satisfiable(system: &ConstraintSystem) -> Result<Satisfiability> {
    let n = system.universe().len();
    if n > MAX_ELIMINATION_VARS {
        return Err(Error::Resource(format!(
            "{n} variables exceed the elimination limit of {MAX_ELIMINATION_VARS}"
        )));
    }
    let m = system.len();
    let mut rows: Vec<Row> = system
        .constraints()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let vars = c.variables.iter().fold(0u64, |acc, v| {
                acc ^ 1 << system.index_of(v).expect("validated universe")
            });
            let mut origin = FixedBitSet::with_capacity(m);
            origin.insert(k);
            Row {
                vars,
                rhs: c.rhs_bit(),
                origin,
            }
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(p) = (rank..m).find(|&r| rows[r].vars & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (vars, rhs, origin) = (rows[rank].vars, rows[rank].rhs, rows[rank].origin.clone());
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.vars & bit != 0 {
                row.vars ^= vars;
                row.rhs ^= rhs;
                row.origin.symmetric_difference_with(&origin);
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }

    if let Some(bad) = rows[rank..].iter().find(|r| r.rhs) {
        return Ok(Satisfiability::Unsat {
            certificate: UnsatCertificate {
                indices: bad.origin.ones().collect(),
            },
            rank,
        });
    }

    let mut bits = vec![false; n];
    for &(r, col) in &pivots {
        bits[col] = rows[r].rhs;
    }
    let witness = Assignment {
        values: system
            .universe()
            .iter()
            .zip(bits)
            .map(|(v, b)| (v.clone(), if b { -1 } else { 1 }))
            .collect(),
    };
    Ok(Satisfiability::Sat { witness, rank })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub count: u64,
    pub total: u64,
    pub solutions: Option<Vec<Assignment>>,
}

/// Tries all `2^n` assignments, evaluating each product directly.
pub fn enumerate(system: &ConstraintSystem, keep_solutions: bool) -> Result<Enumeration> {
    let n = system.universe().len();
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::Resource(format!(
            "{n} variables exceed the enumeration limit of {MAX_ENUMERATION_VARS}"
        )));
    }
    let index: Vec<Vec<usize>> = system
        .constraints()
        .iter()
        .map(|c| {
            c.variables
                .iter()
                .map(|v| system.index_of(v).expect("validated"))
                .collect()
        })
        .collect();
    let total = 1u64 << n;
    let mut count = 0;
    let mut solutions = keep_solutions.then(Vec::new);
    let mut values = vec![1i8; n];
    for code in 0..total {
        for (k, v) in values.iter_mut().enumerate() {
            *v = if code >> k & 1 == 1 { -1 } else { 1 };
        }
        let ok = system
            .constraints()
            .iter()
            .zip(&index)
            .all(|(c, idx)| idx.iter().map(|&i| values[i]).product::<i8>() == c.rhs);
        if ok {
            count += 1;
            if let Some(list) = solutions.as_mut() {
                list.push(Assignment {
                    values: system
                        .universe()
                        .iter()
                        .cloned()
                        .zip(values.iter().copied())
                        .collect(),
                });
            }
        }
    }
    Ok(Enumeration {
        count,
        total,
        solutions,
    })
}

/// Result of multiplying every constraint together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIdentity {
    /// How often each variable occurs across all left-hand sides, universe order.
    pub exponents: Vec<(String, usize)>,
    /// Variables with odd exponent; these survive the product.
    pub residual: Vec<String>,
    pub rhs_product: i8,
    /// Every variable squared away while the right-hand sides multiply to -1.
    pub contradiction: bool,
}

pub fn product_identity(system: &ConstraintSystem) -> ProductIdentity {
    let exponents: Vec<(String, usize)> = system
        .universe()
        .iter()
        .map(|v| {
            let n = system
                .constraints()
                .iter()
                .filter(|c| c.variables.contains(v))
                .count();
            (v.clone(), n)
        })
        .collect();
    let residual: Vec<String> = exponents
        .iter()
        .filter(|(_, n)| n % 2 == 1)
        .map(|(v, _)| v.clone())
        .collect();
    let rhs_product = system.constraints().iter().map(|c| c.rhs).product();
    let contradiction = residual.is_empty() && rhs_product == -1;
    ProductIdentity {
        exponents,
        residual,
        rhs_product,
        contradiction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::constraint::{parse_constraints, ParityConstraint};

    #[test]
    fn ghz_system_is_unsat_with_full_certificate() {
        let sys = ConstraintSystem::ghz();
        match satisfiable(&sys).unwrap() {
            Satisfiability::Unsat { certificate, rank } => {
                assert_eq!(certificate.numbers(), vec![1, 2, 3, 4]);
                assert!(certificate.verify(&sys));
                assert_eq!(rank, 3);
            }
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn single_constraint_witness_is_all_plus() {
        let sys = parse_constraints("B1*B2*B3 = +1").unwrap();
        match satisfiable(&sys).unwrap() {
            Satisfiability::Sat { witness, .. } => {
                assert!(witness.values.iter().all(|(_, v)| *v == 1));
                assert!(witness.satisfies(&sys));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn direct_contradiction() {
        let sys = parse_constraints("x = +1\nx = -1").unwrap();
        let Satisfiability::Unsat { certificate, .. } = satisfiable(&sys).unwrap() else {
            panic!("expected UNSAT");
        };
        assert_eq!(certificate.numbers(), vec![1, 2]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(&ConstraintSystem::ghz(), false).unwrap().count, 0);
        assert_eq!(
            enumerate(&ConstraintSystem::ghz(), false).unwrap().total,
            64
        );
        let empty = ConstraintSystem::new(vec!["p".into(), "q".into()], vec![]).unwrap();
        assert_eq!(enumerate(&empty, false).unwrap().count, 4);
        let wide: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let sys = ConstraintSystem::new(wide, vec![]).unwrap();
        assert!(matches!(enumerate(&sys, false), Err(Error::Resource(_))));
    }

    #[test]
    fn witness_uses_negative_value_when_forced() {
        let sys = parse_constraints("a*b = -1\nb = -1").unwrap();
        let Satisfiability::Sat { witness, rank } = satisfiable(&sys).unwrap() else {
            panic!()
        };
        assert_eq!(rank, 2);
        assert_eq!(witness.get("a"), Some(1));
        assert_eq!(witness.get("b"), Some(-1));
    }

    #[test]
    fn product_identity_examples() {
        let id = product_identity(&ConstraintSystem::ghz());
        assert!(id.residual.is_empty());
        assert_eq!(id.rhs_product, -1);
        assert!(id.contradiction);
        assert!(id.exponents.iter().all(|(_, n)| *n == 2));

        let three = ConstraintSystem::ghz().subsystem(&[0, 1, 2]).unwrap();
        let id = product_identity(&three);
        assert_eq!(id.residual, vec!["A1", "A2", "B3"]);
        assert!(!id.contradiction);
        // the enumeration oracle agrees that no contradiction exists
        assert!(enumerate(&three, false).unwrap().count > 0);

        let empty = ConstraintSystem::new(vec![], vec![]).unwrap();
        let id = product_identity(&empty);
        assert!(id.residual.is_empty() && id.rhs_product == 1 && !id.contradiction);
    }

    #[test]
    fn elimination_limit() {
        let wide: Vec<String> = (0..65).map(|i| format!("v{i}")).collect();
        let c = ParityConstraint::new(&["v0"], 1).unwrap();
        let sys = ConstraintSystem::new(wide, vec![c]).unwrap();
        assert!(matches!(satisfiable(&sys), Err(Error::Resource(_))));
    }
}
