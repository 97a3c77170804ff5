use std::time::Instant;
use polycell_cli::corpus::fixture;
use polycell_core::algebra::{buchberger, saturate, MonomialOrder};
use polycell_core::constructions::{cell_minors, compute_l};
use polycell_core::grid::Vertex;

fn main() {
    let p = fixture("fig21").unwrap();
    let order = MonomialOrder::lex1(&p);
    let t = Instant::now();
    let l = compute_l(&p, &order);
    println!("compute_l: {:.2}s, {} gens", t.elapsed().as_secs_f64(), l.len());
    // cost of one identity saturation step per variable on the final basis
    let vars: Vec<Vertex> = p.vertices().collect();
    let mut worst = (0.0f64, Vertex::new(0, 0));
    let t_all = Instant::now();
    for &v in &vars {
        let t = Instant::now();
        let s = saturate(&l, v, &order);
        let dt = t.elapsed().as_secs_f64();
        assert_eq!(s, l);
        if dt > worst.0 {
            worst = (dt, v);
        }
    }
    println!(
        "identity pass: {:.2}s total, worst {:.2}s at {}",
        t_all.elapsed().as_secs_f64(),
        worst.0,
        worst.1
    );
    let t = Instant::now();
    let gb = buchberger(&cell_minors(&p), &order);
    println!("plain GB of cell minors: {:.3}s, {} elements", t.elapsed().as_secs_f64(), gb.len());
}
