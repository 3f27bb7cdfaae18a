use symtope_core::enumerate::PointEnumerator;
use symtope_core::polytope::homology_polytope;
use symtope_core::fixtures;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "bjorner".into());
    let kmax: u32 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(10);
    let p = homology_polytope(&fixtures::by_name(&which).unwrap()).unwrap();
    let en = PointEnumerator::build(&p, 11).unwrap();
    println!("levels {:?} threads {}", en.level_sizes(), en.threads);
    let t0 = std::time::Instant::now();
    for k in 0..=kmax {
        let t = std::time::Instant::now();
        let c = en.count(k, 400_000_000).unwrap();
        println!("E({k}) = {c}   [{:?}]", t.elapsed());
    }
    println!("total {:?}", t0.elapsed());
}
