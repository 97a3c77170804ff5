use std::time::Instant;
use polycell_cli::corpus::fixture;
use polycell_core::algebra::MonomialOrder;
use polycell_core::constructions::compute_l;

fn main() {
    for name in ["windmill", "ring8", "fig22", "staircase4", "staircase5", "fig21"] {
        let p = fixture(name).unwrap();
        let order = MonomialOrder::lex1(&p);
        let t = Instant::now();
        let l = compute_l(&p, &order);
        println!("{name}: |V|={} gens={} in {:.2}s", p.vertex_count(), l.len(), t.elapsed().as_secs_f64());
    }
}
