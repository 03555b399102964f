use localzeta::algebra::*;
use localzeta::chars::*;
use localzeta::padic::RationalMatrix;
use localzeta::whittaker::sections::*;
fn main() {
    let p = 3u64;
    let reg = SymbolRegistry::new(&["m1", "m2", "m3"]);
    let ps = PrincipalSeries::new(vec![
        PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("m1"))),
        PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("m2"))),
        PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("m3"))),
    ]);
    let g = RationalMatrix::diag_p_powers(p, &[0, -1, -1]);
    for d in 0..2i64 {
        let line = lattice_sum_public(&ps, SectionKind::Ordinary, 1, &g, &[d, d, d], false).unwrap();
        let brute = lattice_sum_public(&ps, SectionKind::Ordinary, 1, &g, &[d, d, d], true).unwrap();
        println!("d={d} equal={} line={:?}", line.eq_at_prime(&brute, p).unwrap(), line.reduce_q_to_prime(p));
        println!("      brute={:?}", brute.reduce_q_to_prime(p));
    }
}
