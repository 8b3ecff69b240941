use chromatic_cobar::comodule::*;
use chromatic_cobar::fgl::Fgl;
use chromatic_cobar::algebra::Poly;

fn main() {
    let k = 3i64;
    let a = 1i64 << k;
    let b = a + k + 2;
    let f = Fgl::build(2, (b - a + 4) as usize).unwrap();
    let pres = dual_stunted(&Window::new(a, b, (b + 1) as usize).unwrap(), &f).unwrap();
    let x8 = ModElt::single(a, Poly::one());
    let psi = pres.psi(&x8, &f).unwrap();
    println!("raw psi:");
    for (c, p) in &psi { println!("  cell {c}: {p}"); }
    let nf = pres.normal_form_gamma(&psi).unwrap();
    println!("normal form:");
    for (c, p) in &nf { println!("  cell {c}: {p}  | mod2: {}", p.mod2()); }
}
