use tkernel::class::GraphClass;
use tkernel::decomposition::tutte_decompose;
use tkernel::generate::{gen_instance, Family};
use tkernel::graph::{Edge, Graph};
use tkernel::kernel::{kernelize_cycle, reduce_c, turing_kernel_cycle, CycleKernelConfig, KernelOptions, KernelizeOutcome, Mutation, ReduceCOutcome, YesReason};
use tkernel::oracle::{exact_k_cycle, OracleSession};

fn g(n: usize, e: &[Edge]) -> Graph {
    Graph::from_edges(n, e).unwrap()
}

fn cycle(n: usize) -> Graph {
    let e: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    g(n, &e)
}

fn run(graph: &Graph, class: GraphClass, k: usize) -> tkernel::kernel::KernelOutcome {
    let cfg = CycleKernelConfig::new(class, k);
    let mut s = cfg.session();
    turing_kernel_cycle(graph, &cfg, &mut s).unwrap()
}

#[test]
fn small_examples() {
    assert!(run(&cycle(4), GraphClass::Planar, 4).answer);
    let tree = g(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
    let out = run(&tree, GraphClass::Planar, 3);
    assert!(!out.answer);
    assert_eq!(out.report.yes_reason, None);
    assert!(!run(&cycle(5), GraphClass::Planar, 6).answer);
}

#[test]
fn reduce_c_cases() {
    let mut s = OracleSession::new(100, 10);
    let mut tri = g(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(reduce_c(&mut s, &mut tri, &[0, 1, 2], 0, 1, 3, "t").unwrap(), ReduceCOutcome::CycleInSide);

    // x=0, y=1, a=2, b=3, c=4: xa, ay, ab, bc
    let mut gp = g(5, &[(0, 2), (2, 1), (2, 3), (3, 4)]);
    match reduce_c(&mut s, &mut gp, &[0, 1, 2, 3, 4], 0, 1, 10, "t").unwrap() {
        ReduceCOutcome::Reduced { kept, removed } => {
            assert_eq!(kept.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
            assert_eq!(removed, vec![3, 4]);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(gp.order(), 3);

    let mut two = g(2, &[]);
    match reduce_c(&mut s, &mut two, &[0, 1], 0, 1, 10, "t").unwrap() {
        ReduceCOutcome::Reduced { removed, .. } => assert!(removed.is_empty()),
        other => panic!("{other:?}"),
    }
}

/// Two pendant triangles on {x, y}, plus a path x-p-q-y closing the block.
#[test]
fn pendant_triangles_on_a_pair_merge() {
    let (x, y) = (0, 1);
    let h = g(7, &[(x, 2), (2, y), (x, 3), (3, y), (x, 4), (4, 5), (5, 6), (6, y)]);
    let td = tutte_decompose(&h);
    let k = 9;
    let mut s = OracleSession::new(200, k);
    let mut audit = Vec::new();
    match kernelize_cycle(&h, &td, k, &mut s, &KernelOptions::default(), &mut audit).unwrap() {
        KernelizeOutcome::Done { graph, .. } => {
            assert!(graph.order() < h.order());
            assert_eq!(exact_k_cycle(&graph, k).unwrap(), exact_k_cycle(&h, k).unwrap());
            for k in 3..8 {
                assert_eq!(exact_k_cycle(&graph, k).unwrap(), exact_k_cycle(&h, k).unwrap(), "k = {k}");
            }
        }
        KernelizeOutcome::Reported(ev) => panic!("unexpected yes {ev:?}"),
    }
    assert!(audit.is_empty(), "{audit:?}");
}

#[test]
fn width_exit_on_a_big_torso() {
    let t = gen_instance(Family::TriconnectedPlanar, 30, 1).unwrap();
    let out = run(&t, GraphClass::Planar, 6);
    assert!(out.answer);
    assert_eq!(out.report.yes_reason, Some(YesReason::Width));
    assert_eq!(out.stats.count, 0);
}

#[test]
fn agrees_with_exact_on_random_planar() {
    for seed in 0..40 {
        let n = 20 + (seed as usize * 7) % 60;
        let graph = gen_instance(Family::PlanarTriangulationSubgraph, n, seed).unwrap();
        for k in [3, 5, 7] {
            let out = run(&graph, GraphClass::Planar, k);
            assert_eq!(out.answer, exact_k_cycle(&graph, k).unwrap(), "seed {seed} k {k}");
            assert!(out.audit_failures.is_empty(), "seed {seed} k {k}: {:?}", out.audit_failures);
            assert!(out.report.max_query_n <= out.report.bound_max_query_n);
            assert_eq!(out.report.off_class_queries, 0);
        }
    }
}

#[test]
fn agrees_on_other_classes() {
    for seed in 0..15 {
        for (family, class) in [(Family::Subcubic, GraphClass::MaxDegree(3)), (Family::LineGraph, GraphClass::ClawFree)] {
            let graph = gen_instance(family, 40, seed).unwrap();
            for k in [4, 6] {
                let out = run(&graph, class, k);
                assert_eq!(out.answer, exact_k_cycle(&graph, k).unwrap(), "{family} seed {seed} k {k}");
                assert!(out.audit_failures.is_empty(), "{:?}", out.audit_failures);
            }
        }
    }
}

#[test]
fn skipping_witness_retention_is_caught() {
    let mut wrong = 0;
    for seed in 0..40 {
        let graph = gen_instance(Family::PlanarTriangulationSubgraph, 40, seed).unwrap();
        let k = 6;
        let opts = KernelOptions {
            mutation: Some(Mutation::SkipWitnessRetention),
            ..KernelOptions::default()
        };
        let cfg = CycleKernelConfig::new(GraphClass::Planar, k).with_options(opts);
        let mut s = cfg.session();
        let out = turing_kernel_cycle(&graph, &cfg, &mut s).unwrap();
        wrong += (out.answer != exact_k_cycle(&graph, k).unwrap()) as usize;
    }
    assert!(wrong > 0);
}
