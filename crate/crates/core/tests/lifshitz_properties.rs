use casimir::constants::PICONEWTON;
use casimir::corrections::delta_t_general;
use casimir::lifshitz::matsubara_term;
use casimir::quadrature::poly_exp_tail_factor;
use casimir::{bare_force, force_integral, force_sum, force_sum_alt, Geometry, Material, NumericSettings, ThermalGrid};

const RADIUS: f64 = 100e-6;
const GAP: f64 = 0.1e-6;

fn geom() -> Geometry {
    Geometry::new(RADIUS, GAP).unwrap()
}

fn s() -> NumericSettings {
    NumericSettings::default()
}

#[test]
fn better_mirrors_attract_harder() {
    let g = geom();
    let ideal = force_sum(&Material::ideal(), &g, 300.0, &s()).unwrap().force;
    let plasma = force_sum(&Material::plasma(2e16).unwrap(), &g, 300.0, &s()).unwrap().force;
    let drude = force_sum(&Material::drude(2e16, 5e13).unwrap(), &g, 300.0, &s()).unwrap().force;
    assert!(ideal > plasma && plasma > drude, "{ideal:e} {plasma:e} {drude:e}");
}

#[test]
fn thermal_excess_shrinks_with_temperature() {
    let mat = Material::drude(2e16, 5e13).unwrap();
    let g = geom();
    let integral = force_integral(&mat, &g, &s()).unwrap().force;
    let deltas: Vec<f64> = [300.0, 150.0, 75.0]
        .iter()
        .map(|&t| force_sum(&mat, &g, t, &s()).unwrap().force - integral)
        .collect();
    assert!(deltas.windows(2).all(|w| w[1] < w[0]), "{deltas:?}");
    assert!(deltas[2] > 0.0);
}

#[test]
fn matsubara_terms_are_negative_decreasing_and_bounded() {
    let mat = Material::drude(2e16, 5e13).unwrap();
    let grid = ThermalGrid::new(300.0, GAP).unwrap();
    let x1 = grid.x1();
    let terms: Vec<f64> = (1..=60).map(|n| matsubara_term(&mat, GAP, grid.x(n), &s()).value).collect();
    assert!(terms.iter().all(|&t| t < 0.0));
    assert!(terms.windows(2).all(|w| w[1].abs() < w[0].abs()));
    for n in [10usize, 20, 40] {
        let tail: f64 = terms[n..].iter().map(|t| t.abs()).sum();
        let bound = terms[n - 1].abs() * poly_exp_tail_factor(grid.x(n as u64), x1);
        assert!(tail <= bound, "n={n}: tail {tail:e} > bound {bound:e}");
    }
}

#[test]
fn plasma_approaches_ideal_as_frequency_grows() {
    let g = geom();
    let ideal = force_sum(&Material::ideal(), &g, 300.0, &s()).unwrap().force;
    let gaps: Vec<f64> = [1e17, 1e18, 1e19]
        .iter()
        .map(|&wp| ideal - force_sum(&Material::plasma(wp).unwrap(), &g, 300.0, &s()).unwrap().force)
        .collect();
    assert!(gaps.iter().all(|&d| d > 0.0));
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    // Leading skin-depth correction is of order α = c/(2aω_p).
    let alpha = 2.997_924_58e8 / (2.0 * GAP * 1e19);
    assert!(gaps[2] / ideal < 10.0 * alpha, "{} vs α {alpha:e}", gaps[2] / ideal);
}

#[test]
fn prescription_difference_is_the_general_correction() {
    let g = geom();
    for mat in [Material::plasma(2e16).unwrap(), Material::drude(2e16, 5e13).unwrap()] {
        let tight = s().with_rel_tol(1e-11);
        let sum = force_sum(&mat, &g, 300.0, &tight).unwrap();
        let alt = force_sum_alt(&mat, &g, 300.0, &tight).unwrap();
        let general = delta_t_general(&mat, &g, 300.0, &tight).unwrap();
        let diff = sum.force - alt.force;
        let bar = sum.abs_error + alt.abs_error + general.abs_error;
        assert!((diff - general.value).abs() <= bar.max(1e-9 * general.value.abs()), "{}", mat.model());
    }
}

#[test]
fn integral_form_ignores_temperature() {
    // The integral route takes no temperature at all; check it against a
    // sum at very low T, where the thermal excess is negligible.
    let mat = Material::plasma(2e16).unwrap();
    let g = geom();
    let integral = force_integral(&mat, &g, &s()).unwrap();
    let cold = force_sum(&mat, &g, 3.0, &s()).unwrap();
    let rel = (cold.force - integral.force) / integral.force;
    assert!(rel > 0.0 && rel < 2e-3, "{rel:e}");
}

#[test]
fn drude_with_tiny_relaxation_matches_plasma_at_finite_frequency() {
    // ω_τ → 0 recovers the plasma response at every nonzero Matsubara
    // frequency; only the zero-frequency TE mode differs, which force_sum
    // treats identically for both models.
    let g = geom();
    let plasma = force_sum(&Material::plasma(2e16).unwrap(), &g, 300.0, &s()).unwrap().force;
    let drude = force_sum(&Material::drude(2e16, 1e6).unwrap(), &g, 300.0, &s()).unwrap().force;
    assert!(((drude - plasma) / plasma).abs() < 1e-6);
}

#[test]
fn enormous_plasma_frequency_gives_bare_force() {
    let g = geom();
    let f = force_integral(&Material::plasma(1e22).unwrap(), &g, &s()).unwrap().force;
    let f0 = bare_force(&g);
    assert!(((f - f0) / f0).abs() < 1e-3, "{} vs {} pN", f / PICONEWTON, f0 / PICONEWTON);
}
