//! Complexes built with the exact bigrading of a coframe.
//!
//! A frame span that is only `∂̄`-closed does not carry a double complex of
//! its own; [`delbar_complex`] keeps the span and its `∂̄`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::coframe::Coframe;
use super::error::DgaError;
use super::frame::{FrameBasis, FrameSpan};
use crate::cohomology::DoubleComplex;
use crate::linalg::ExactMatrix;

/// Checks that every frame element is pure of its declared type for the
/// coframe. Wedges of pure elements are then pure as well.
pub fn check_frame_types(span: &FrameSpan, coframe: &Coframe) -> Result<(), DgaError> {
    for e in &span.elements {
        let parts = coframe.bidegree_parts(&e.value);
        if parts.len() != 1 || !parts.contains_key(&e.form_type.bidegree()) {
            return Err(DgaError::MixedBidegree {
                label: e.name.clone(),
            });
        }
    }
    Ok(())
}

/// The span of `basis` with its `∂̄`; `∂` is recorded as zero. The result
/// is a complex in the `q` direction, good for Dolbeault cohomology and for
/// nothing that involves `∂`.
///
/// `d x` is split with the coframe; its `(p,q+1)` part must lie in the span
/// and no part may have a bidegree other than `(p+1,q)` or `(p,q+1)`.
pub fn delbar_complex(basis: &FrameBasis, coframe: &Coframe) -> Result<DoubleComplex, DgaError> {
    check_frame_types(basis.span(), coframe)?;
    let n = basis.algebra().n();
    let mut delbar = BTreeMap::new();
    for (p, q) in basis.bidegrees().collect::<Vec<_>>() {
        if p > n || q > n {
            continue;
        }
        let mut m = ExactMatrix::zeros(basis.dim((p, q + 1)), basis.dim((p, q)));
        for (j, x) in basis.raw((p, q)).iter().enumerate() {
            let label = || basis.span().label(&basis.keys((p, q))[j]);
            for (target, part) in coframe.d_parts(x) {
                if target == (p + 1, q) {
                    continue;
                }
                if target != (p, q + 1) {
                    return Err(DgaError::WrongBidegree {
                        label: label(),
                        p: target.0,
                        q: target.1,
                    });
                }
                let coords = basis.coordinates(&part).map_err(|e| match e {
                    DgaError::NotInFrameSpan { residual } => DgaError::SpanNotClosed {
                        label: label(),
                        residual,
                    },
                    other => other,
                })?;
                for (b, v) in coords {
                    if b != target && v.iter().all(Zero::is_zero) {
                        continue;
                    }
                    assert_eq!(b, target, "pure parts have pure coordinates");
                    for (i, c) in v.into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
            }
        }
        delbar.insert((p, q), m);
    }
    let labels = basis
        .bidegrees()
        .filter(|&(p, q)| p <= n && q <= n)
        .map(|b| (b, basis.labels(b)))
        .collect();
    let complex = DoubleComplex::new(n, labels, BTreeMap::new(), delbar)
        .map_err(|e| DgaError::InvalidModel(e.to_string()))?;
    complex
        .validate()
        .map_err(|e| DgaError::StructuralViolation(e.to_string()))?;
    Ok(complex)
}
