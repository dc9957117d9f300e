use platonic_census::*;
use std::time::Instant;

fn main() {
    let s = SchlafliType::new(5, 3, 5).unwrap();
    let mut t = Triangulation::new(s, true);
    t.add_platonic_solid(5, 3).unwrap();
    t.add_platonic_solid(5, 3).unwrap();
    assert!(t.glue_faces(1, 120, 5));
    let mut t2 = t.clone();
    'outer: for s0 in (1..t.len()).step_by(2) {
        for s1 in (0..t.len()).step_by(2) {
            if t.neighbor(s0, 3) == UNGLUED && t.neighbor(s1, 3) == UNGLUED {
                let mut c = t.clone();
                if c.glue_faces(s0, s1, 5) {
                    t2 = c;
                    break 'outer;
                }
            }
        }
    }
    let iters = 50000;
    let t0 = Instant::now();
    for _ in 0..iters {
        std::hint::black_box(specialized_iso_sig(&t2).unwrap());
    }
    println!("sig: {:.2?}/iter", t0.elapsed() / iters);
    let t0 = Instant::now();
    for _ in 0..iters {
        let mut c = t2.clone();
        std::hint::black_box(fix_edges(&mut c, 5, 5));
    }
    println!("fix: {:.2?}/iter", t0.elapsed() / iters);
}
