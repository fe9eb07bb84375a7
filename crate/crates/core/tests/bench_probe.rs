use std::time::Instant;
use inj_ec_core::graph;
use inj_ec_core::reductions::*;
use inj_ec_core::solvers::injective_decide;

#[test]
#[ignore]
fn probe_heavy_unsat() {
    let pet = graph::petersen();
    let k4 = graph::complete(4);

    let t = Instant::now();
    let out = build_gprime_3cubic(&pet).unwrap();
    let r = injective_decide(&out.graph, 3);
    println!("petersen gprime k=3: colorable={} nodes={} in {:?}", r.colorable, r.stats.nodes, t.elapsed());

    let t = Instant::now();
    let out = build_reduction_planar(&k4, 4).unwrap();
    let r = injective_decide(&out.graph, 3);
    println!("k4 planar(4) k=3: colorable={} nodes={} in {:?}", r.colorable, r.stats.nodes, t.elapsed());

    let t = Instant::now();
    let out = build_reduction_4cubic(&pet).unwrap();
    let r = injective_decide(&out.graph, 4);
    println!("petersen 4cubic k=4: colorable={} nodes={} in {:?}", r.colorable, r.stats.nodes, t.elapsed());

    let t = Instant::now();
    let out = build_gdoubleprime_3cubic(&pet).unwrap();
    let r = injective_decide(&out.graph, 3);
    println!("petersen gpp k=3: colorable={} nodes={} in {:?}", r.colorable, r.stats.nodes, t.elapsed());

    let t = Instant::now();
    let out = build_reduction_bipartite(&k4).unwrap();
    let r = injective_decide(&out.graph, 3);
    println!("k4 bipartite k=3: colorable={} nodes={} in {:?}", r.colorable, r.stats.nodes, t.elapsed());
}
