//! The geometry behind the addition-deletion count k: restrict the rest
//! of the arrangement to one member and count distinct points. Lines are
//! handled in an adapted coordinate chart, conics through a rational
//! parametrization. Logarithmic derivations restrict along.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::factor::distinct_root_count;
use clfree::freeness::{derivation_module, euler_derivation};
use clfree::restrict::{
    conic_param, line_chart, psi, restrict_form_to_line, restrict_to_conic, restrict_to_line,
};
use clfree::ring::Ring;

fn main() {
    // Both lines are tangent to the conic, at different points.
    let arr = Arrangement::from_forms(&[
        (CurveKind::Conic, "y^2 - xz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "z"),
    ])
    .unwrap();
    let f = arr.defining_polynomial();
    let uv = Ring::uv();

    // Restriction to the line x: the product of the other members
    // becomes a binary form whose distinct roots are the k points.
    let rest_of_line = &arr.curves()[0].form * &arr.curves()[2].form;
    let chart = line_chart(&arr.curves()[1].form).unwrap();
    let restricted = restrict_form_to_line(&rest_of_line, &chart, &uv);
    println!("rest of the arrangement restricted to the line x: {restricted}");
    println!(
        "  k = {} distinct points",
        distinct_root_count(&restricted).unwrap()
    );

    // Restriction to the conic: pull the rest back through a rational
    // parametrization of the conic; contact orders become root orders.
    let rest_of_conic = &arr.curves()[1].form * &arr.curves()[2].form;
    let param = conic_param(&arr.curves()[0].form).unwrap();
    let pulled = psi(&param, &rest_of_conic);
    println!();
    println!("rest pulled back through the conic parametrization: {pulled}");
    println!(
        "  k = {} distinct points (each line is tangent: a double root)",
        distinct_root_count(&pulled).unwrap()
    );

    // Derivations restrict along. The Euler field stays the Euler field;
    // a generator of D0 restricts to a derivation tangent to the
    // restricted points.
    let euler = euler_derivation(&f);
    let on_line = restrict_to_line(&euler, &chart, &uv);
    let (a, b) = on_line.components();
    println!();
    println!("euler field restricted to the line x: ({a}, {b})");

    let module = derivation_module(&f);
    let theta = &module.generators[0];
    let on_line = restrict_to_line(theta, &chart, &uv);
    println!(
        "first D0 generator restricted to the line: tangent to the restricted points: {}",
        on_line.is_tangent_to(&restricted)
    );
    let on_conic = restrict_to_conic(theta, &param).unwrap();
    println!(
        "same generator restricted to the conic: tangent to the pulled-back points: {}",
        on_conic.is_tangent_to(&pulled)
    );
}
