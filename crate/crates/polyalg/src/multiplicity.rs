//! Local intersection multiplicity `dim_k O_p/(A, B)` by truncated
//! Macaulay matrices.
//!
//! With `m` the maximal ideal at the translated origin, `dim k[v]/(I + m^N)`
//! is non-decreasing in `N`, and once two consecutive orders agree we have
//! `m^N ⊆ I` locally (Nakayama), so the value is the local multiplicity.

use std::collections::HashMap;

use crate::bivariate::{Exponent, Poly2};
use crate::error::PolyError;
use crate::field::Field;

/// Truncation control for [`local_multiplicity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBound {
    /// First order tried.
    pub initial_order: usize,
    /// Orders double until this bound is exceeded.
    pub max_order: usize,
}

impl Default for TruncationBound {
    fn default() -> Self {
        TruncationBound {
            initial_order: 4,
            max_order: 64,
        }
    }
}

/// `dim k[v0, v1] / ((a, b) + m^order)` for polynomials already centred at
/// the origin.
pub fn truncated_colength<F: Field>(a: &Poly2<F>, b: &Poly2<F>, order: usize) -> usize {
    let field = a.field();
    let columns: Vec<Exponent> = (0..order as u32)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect();
    let index: HashMap<Exponent, usize> = columns.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let ncols = columns.len();

    // pivot column -> reduced row with a one at that column
    let mut pivots: HashMap<usize, Vec<F::Elem>> = HashMap::new();
    let mut rank = 0;
    for shift in &columns {
        for g in [a, b] {
            let mut row = vec![field.zero(); ncols];
            let mut nonzero = false;
            for (e, c) in g.terms() {
                let target = (e.0 + shift.0, e.1 + shift.1);
                if let Some(&col) = index.get(&target) {
                    row[col] = c.clone();
                    nonzero = true;
                }
            }
            if !nonzero {
                continue;
            }
            // reduce against existing pivots
            for col in 0..ncols {
                if field.is_zero(&row[col]) {
                    continue;
                }
                match pivots.get(&col) {
                    Some(prow) => {
                        let factor = row[col].clone();
                        for k in col..ncols {
                            if !field.is_zero(&prow[k]) {
                                row[k] = field.sub(&row[k], &field.mul(&factor, &prow[k]));
                            }
                        }
                    }
                    None => {
                        let inv = field.inv(&row[col]).expect("nonzero");
                        for v in row.iter_mut().skip(col) {
                            *v = field.mul(v, &inv);
                        }
                        pivots.insert(col, row);
                        rank += 1;
                        break;
                    }
                }
            }
        }
    }
    ncols - rank
}

/// Local intersection multiplicity of `a` and `b` at `point`.
pub fn local_multiplicity<F: Field>(
    a: &Poly2<F>,
    b: &Poly2<F>,
    point: (&F::Elem, &F::Elem),
    bound: TruncationBound,
) -> Result<usize, PolyError> {
    let field = a.field();
    if !field.is_zero(&a.eval(point.0, point.1)) || !field.is_zero(&b.eval(point.0, point.1)) {
        return Err(PolyError::NotACommonZero);
    }
    let a0 = a.translate(point.0, point.1);
    let b0 = b.translate(point.0, point.1);
    let mut order = bound.initial_order.max(1);
    while order <= bound.max_order {
        let here = truncated_colength(&a0, &b0, order);
        let next = truncated_colength(&a0, &b0, order + 1);
        if here == next {
            return Ok(here);
        }
        order *= 2;
    }
    Err(PolyError::TruncationExceeded {
        bound: bound.max_order,
    })
}
