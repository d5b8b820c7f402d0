use num_traits::Zero;

use super::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Label given to the hyperplane at infinity `x_0 = 0` by [`cone`].
pub const CONE_LABEL: &str = "H0";

/// Homogenizes `L(x) + a` to `L(x) + a x_0` in `C^{l+1}` (with `x_0` the
/// first coordinate) and adds `x_0 = 0`.
pub fn cone(arr: &Arrangement) -> Result<Arrangement> {
    let mut hs = Vec::with_capacity(arr.len() + 1);
    for h in arr.hyperplanes() {
        let mut coeffs = Vec::with_capacity(arr.dim() + 1);
        coeffs.push(h.constant().clone());
        coeffs.extend(h.coeffs().iter().cloned());
        hs.push(Hyperplane::new(h.label(), coeffs, Q::zero())?);
    }
    let mut label = CONE_LABEL.to_string();
    while arr.index_of_label(&label).is_some() {
        label.push('\'');
    }
    let mut e0 = vec![Q::zero(); arr.dim() + 1];
    e0[0] = q(1);
    hs.push(Hyperplane::new(label, e0, Q::zero())?);
    Arrangement::new(arr.dim() + 1, hs)
}

/// Sets `x_0 = 1` in a central arrangement containing `x_0 = 0`.
pub fn decone(arr: &Arrangement) -> Result<Arrangement> {
    if arr.dim() < 2 {
        return Err(Error::Decone("need ambient dimension at least 2".into()));
    }
    if !arr.is_central() {
        return Err(Error::Decone("arrangement is not central".into()));
    }
    let mut e0 = vec![Q::zero(); arr.dim()];
    e0[0] = q(1);
    let h0 = Hyperplane::new("", e0, Q::zero())?;
    let Some(i0) = arr.index_of(&h0) else {
        return Err(Error::Decone("hyperplane x0 = 0 is absent".into()));
    };
    let mut hs = Vec::with_capacity(arr.len() - 1);
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        if i == i0 {
            continue;
        }
        let rest = h.coeffs()[1..].to_vec();
        if rest.iter().all(Zero::is_zero) {
            return Err(Error::Decone(format!(
                "hyperplane {} becomes a constant after x0 = 1",
                h.label()
            )));
        }
        hs.push(Hyperplane::new(h.label(), rest, h.coeffs()[0].clone())?);
    }
    Arrangement::new(arr.dim() - 1, hs)
}
