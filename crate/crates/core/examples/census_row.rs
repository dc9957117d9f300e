use platonic_census::*;
use std::time::Instant;

//! Enumerates one census row and prints the tally, e.g.
//! `cargo run --release --example census_row -- 3 4 4 2 yes 2`.

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: u32 = args[1].parse().unwrap();
    let q: u32 = args[2].parse().unwrap();
    let r: u32 = args[3].parse().unwrap();
    let max: usize = args[4].parse().unwrap();
    let orientable = args[5] == "yes";
    let threads: usize = args.get(6).map(|s| s.parse().unwrap()).unwrap_or(8);
    let cfg = SearchConfig::new(SchlafliType::new(p, q, r).unwrap(), max, orientable)
        .threads(threads);
    let t0 = Instant::now();
    let result = enumerate(cfg).unwrap();
    let tally: Vec<String> = result
        .tally()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    println!(
        "{{{p},{q},{r}}} max {max} orientable={orientable} threads={threads}: {} [{}] nodes={} seen={} ({} MB) in {:.2?}",
        result.sigs.len(),
        tally.join(" "),
        result.stats.nodes,
        result.stats.peak_seen_entries,
        result.stats.seen_bytes / (1 << 20),
        t0.elapsed()
    );
}
