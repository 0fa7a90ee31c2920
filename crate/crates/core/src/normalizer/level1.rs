use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{compose_maps, FormalMap, HoloSeries2};
use crate::surface::{require_class_unit, transform, GraphSurface};

/// Removes `phi_{l11}` for `2 <= l <= N-2` with maps `z -> z + c z^l`, in
/// increasing `l`.
///
/// Returns the prenormalized surface and the cumulative map (`g = 0`, `f`
/// depending on `z` only).
pub fn prenormalize_level1(m: &GraphSurface) -> Result<(GraphSurface, FormalMap)> {
    require_class_unit(m)?;
    let n = m.order();
    let mut current = m.clone();
    let mut cumulative = FormalMap::identity(n);
    for l in 2..=n.saturating_sub(2) {
        let c = current.phi().coeff((l, 1, 1));
        if c.is_zero() {
            continue;
        }
        // the image coefficient is phi_l1 - c, up to terms in lower f_a0
        let step = FormalMap::new(HoloSeries2::monomial(n, (l, 0), c), HoloSeries2::zero(n))?;
        current = transform(&current, &step)?;
        if !current.phi().coeff((l, 1, 1)).is_zero() {
            return Err(Error::NotPrenormalized { l });
        }
        cumulative = compose_maps(&step, &cumulative)?;
    }
    Ok((current, cumulative))
}
