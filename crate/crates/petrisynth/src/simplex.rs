//! Exact rational linear feasibility via a phase-one simplex.
//!
//! All arithmetic is over arbitrary-precision rationals, so feasibility
//! answers are exact. Bland's rule (lowest eligible index, both for the
//! entering and the leaving variable) rules out cycling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

/// One row `sum coeffs[i] * x[i]  (>= | =)  rhs` with implicit `x >= 0`.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Row {
    pub fn from_i64(coeffs: &[i64], relation: Relation, rhs: i64) -> Row {
        Row {
            coeffs: coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect(),
            relation,
            rhs: BigRational::from(BigInt::from(rhs)),
        }
    }
}

/// Searches a nonnegative rational point satisfying every row.
///
/// Rows must have nonnegative right-hand sides (the separation systems only
/// ever use 0 or 1).
pub fn feasible_point(num_vars: usize, rows: &[Row]) -> Option<Vec<BigRational>> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    debug_assert!(rows.iter().all(|r| r.rhs >= zero));

    // Tableau columns: the structural variables, one slack or surplus per
    // inequality, one artificial per row that needs one, then the rhs.
    let num_surplus = rows.iter().filter(|r| r.relation == Relation::Ge).count();
    let mut artificial_rows: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let needs_artificial = match row.relation {
            // `>= 0` rows can start from the all-zero basic solution with the
            // surplus basic; `>= k` with k > 0 cannot.
            Relation::Ge => row.rhs > zero,
            Relation::Eq => true,
        };
        if needs_artificial {
            artificial_rows.push(i);
        }
    }
    let num_cols = num_vars + num_surplus + artificial_rows.len() + 1;
    let rhs_col = num_cols - 1;

    let mut tableau: Vec<Vec<BigRational>> = vec![vec![zero.clone(); num_cols]; rows.len()];
    let mut basis: Vec<usize> = vec![usize::MAX; rows.len()];
    let mut surplus_idx = 0;
    let mut artificial_idx = 0;
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.coeffs.iter().enumerate() {
            tableau[i][j] = c.clone();
        }
        tableau[i][rhs_col] = row.rhs.clone();
        if row.relation == Relation::Ge {
            let col = num_vars + surplus_idx;
            surplus_idx += 1;
            tableau[i][col] = -one.clone();
            if row.rhs.is_zero() {
                // Negate so the surplus column is a unit column; the row then
                // reads `-sum c x + s = 0` with s basic at zero.
                for cell in tableau[i].iter_mut() {
                    *cell = -std::mem::take(cell);
                }
                basis[i] = col;
            }
        }
        if basis[i] == usize::MAX {
            let col = num_vars + num_surplus + artificial_idx;
            artificial_idx += 1;
            tableau[i][col] = one.clone();
            basis[i] = col;
        }
    }

    // Phase-one objective: minimize the sum of artificial variables. The
    // objective row holds reduced costs; basic columns must read zero, so
    // subtract every artificial row once.
    let artificial_base = num_vars + num_surplus;
    let mut objective = vec![zero.clone(); num_cols];
    for col in artificial_base..rhs_col {
        objective[col] = one.clone();
    }
    for (i, &b) in basis.iter().enumerate() {
        if b >= artificial_base {
            let row = tableau[i].clone();
            for (cell, v) in objective.iter_mut().zip(row.iter()) {
                *cell -= v;
            }
        }
    }

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        // Artificial columns never re-enter; a feasible system keeps a
        // zero-valued phase-one optimum without them.
        let entering = (0..artificial_base).find(|&j| objective[j] < zero);
        let Some(entering) = entering else {
            break;
        };
        // Ratio test; Bland tie-break on the basic variable index.
        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..tableau.len() {
            let pivot = &tableau[i][entering];
            if pivot <= &zero {
                continue;
            }
            let ratio = &tableau[i][rhs_col] / pivot;
            let better = match &leaving {
                None => true,
                Some((li, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*li])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            // The phase-one objective is bounded below by zero, so an
            // unbounded ray cannot appear.
            unreachable!("phase-one objective cannot be unbounded");
        };

        let pivot = tableau[pivot_row][entering].clone();
        for cell in tableau[pivot_row].iter_mut() {
            *cell /= &pivot;
        }
        let pivot_cells: Vec<(usize, BigRational)> = tableau[pivot_row]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        for i in 0..tableau.len() {
            if i == pivot_row || tableau[i][entering].is_zero() {
                continue;
            }
            // After the row operation the entering column reads zero here;
            // taking the factor out achieves that directly.
            let factor = std::mem::replace(&mut tableau[i][entering], zero.clone());
            for (j, v) in &pivot_cells {
                if *j == entering {
                    continue;
                }
                let delta = &factor * v;
                tableau[i][*j] -= delta;
            }
        }
        if !objective[entering].is_zero() {
            let factor = std::mem::replace(&mut objective[entering], zero.clone());
            for (j, v) in &pivot_cells {
                if *j == entering {
                    continue;
                }
                let delta = &factor * v;
                objective[*j] -= delta;
            }
        }
        basis[pivot_row] = entering;
    }

    // Optimum reached; feasible iff no artificial variable keeps a positive
    // value.
    for (i, &b) in basis.iter().enumerate() {
        if b >= artificial_base && tableau[i][rhs_col] > zero {
            return None;
        }
    }
    let mut point = vec![zero.clone(); num_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < num_vars {
            point[b] = tableau[i][rhs_col].clone();
        }
    }
    Some(point)
}

/// Evaluates a row at a point.
pub fn satisfies(row: &Row, point: &[BigRational]) -> bool {
    let lhs: BigRational = row
        .coeffs
        .iter()
        .zip(point.iter())
        .map(|(c, x)| c * x)
        .sum();
    match row.relation {
        Relation::Ge => lhs >= row.rhs,
        Relation::Eq => lhs == row.rhs,
    }
}

/// Scales a rational point by the least common multiple of its denominators,
/// yielding nonnegative integers for nonnegative inputs.
pub fn scale_to_integers(point: &[BigRational]) -> Vec<BigInt> {
    scale_to_integers_signed(point)
}

/// Same scaling for points of arbitrary sign.
pub fn scale_to_integers_signed(point: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in point {
        lcm = lcm.lcm(x.denom());
    }
    point
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        // x >= 1 and -x >= 0.
        let rows = vec![
            Row::from_i64(&[1], Relation::Ge, 1),
            Row::from_i64(&[-1], Relation::Ge, 0),
        ];
        assert!(feasible_point(1, &rows).is_none());
    }

    #[test]
    fn equality_with_lower_bound() {
        // x - y = 0 and x >= 1.
        let rows = vec![
            Row::from_i64(&[1, -1], Relation::Eq, 0),
            Row::from_i64(&[1, 0], Relation::Ge, 1),
        ];
        let point = feasible_point(2, &rows).unwrap();
        for row in &rows {
            assert!(satisfies(row, &point));
        }
        assert_eq!(point[0], point[1]);
        assert!(point[0] >= rat(1));
    }

    #[test]
    fn homogeneous_systems_admit_zero() {
        let rows = vec![
            Row::from_i64(&[1, -2, 3], Relation::Eq, 0),
            Row::from_i64(&[2, 1, -1], Relation::Ge, 0),
        ];
        let point = feasible_point(3, &rows).unwrap();
        for row in &rows {
            assert!(satisfies(row, &point));
        }
    }

    #[test]
    fn scaling_clears_denominators() {
        let point = vec![
            BigRational::new(BigInt::from(1), BigInt::from(3)),
            BigRational::new(BigInt::from(5), BigInt::from(6)),
        ];
        let ints = scale_to_integers(&point);
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(5)]);
    }

    #[test]
    fn mixed_system() {
        // x + y >= 1, x - y = 0, 3x >= 1: x = y with x >= 1/2 works.
        let rows = vec![
            Row::from_i64(&[1, 1], Relation::Ge, 1),
            Row::from_i64(&[1, -1], Relation::Eq, 0),
            Row::from_i64(&[3, 0], Relation::Ge, 1),
        ];
        let point = feasible_point(2, &rows).unwrap();
        for row in &rows {
            assert!(satisfies(row, &point));
        }
    }
}
