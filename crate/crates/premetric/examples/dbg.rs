use premetric::constitutive::presets;
use premetric::symbol::*;

fn main() {
    let chi = presets::maxwell_minkowski();
    let f = fresnel_tensor(&chi);
    let k = Covector::real([1.0, 0.0, 0.0, 0.0]);
    println!("G(dt) = {}", f.eval(&k));
    let k2 = Covector::real([0.4, 1.3, -0.2, 0.9]);
    let kk: f64 = -0.4*0.4 + 1.3*1.3 + 0.2*0.2 + 0.9*0.9;
    println!("G(k2) = {}  expected {}", f.eval(&k2), kk*kk);
    let q = q_matrix(&chi, &k);
    for a in 0..4 { println!("Q[{a}] = {:?}", q[a]); }
}
