use ropekit::generators;
use ropekit::geom::*;
use ropekit::thickness::*;

fn main() {
    // parallel circles
    let a = generators::circle(180, 1.0);
    let b = generators::circle(180, 1.0).translated(Vec3::new(0.0, 0.0, 3.0));
    let link = PolyLink::new(vec![a.component(0).clone(), b.component(0).clone()]).unwrap();
    let dc = doubly_critical_self_distance(&link);
    println!("parallel circles dcsd = {} (expect ~2)", dc.distance);

    // local thickness circle
    let c = generators::circle(512, 1.0);
    let t = local_thickness(&c, &ArcPosition { component: 0, arclength: 1.3 }).unwrap();
    println!("circle local thickness = {} (expect 1)", t);

    // perturbed circles oracle
    for seed in 0..5u64 {
        let link = generators::perturbed(&generators::circle(200, 1.0), seed, 0.1);
        let bf = thickness_bruteforce(&link).unwrap();
        let fast = thickness(&link);
        println!("seed {seed}: fast {} (minrad {} dcsd {}) oracle {}", fast.thickness, fast.minrad_value, fast.dcsd_value, bf);
    }
}
