//! Worked examples through the public API. Derived values are recomputed
//! here by plain subset enumeration.

use prodmatch::construct::{
    classify_construction, fast, fbast, fcast, predicted_size, ConditionTag, PartName, SizeInputs,
};
use prodmatch::io::{parse_edge_list, parse_json};
use prodmatch::iso::are_isomorphic_small;
use prodmatch::matching::{classify_matching, enumerate_k_matchings, is_k_matching, max_k_matching, unmatched_vertices};
use prodmatch::product::{EdgeClass, Projection};
use prodmatch::search::DEFAULT_BUDGET;
use prodmatch::weak_hom::{allowed_edges, is_whp, max_whp_k_matching};
use prodmatch::well_behaved::{check_ast, check_boxast, check_circledast, equivalence_suite, BOXAST_SEVEN};
use prodmatch::{
    product, ConstructionKind, EdgeSet, Error, Graph, Label, Orientation, ProductKind, Side, Verdict,
};

fn set(ids: &[usize]) -> EdgeSet {
    ids.iter().copied().collect()
}

fn degrees(g: &Graph, mask: u64) -> Vec<u32> {
    let mut d = vec![0; g.order()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if mask >> e & 1 == 1 {
            d[a] += 1;
            d[b] += 1;
        }
    }
    d
}

/// Sizes of every k-matching, by looking at all 2^|E| subsets.
fn brute_sizes(g: &Graph, k: u32) -> Vec<usize> {
    assert!(g.size() <= 22);
    (0u64..1 << g.size())
        .filter(|&mask| degrees(g, mask).iter().all(|&d| d == 0 || d == k))
        .map(|mask| mask.count_ones() as usize)
        .collect()
}

fn brute_max(g: &Graph, k: u32) -> usize {
    brute_sizes(g, k).into_iter().max().unwrap()
}

fn brute_iso(a: &Graph, b: &Graph) -> bool {
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == a.order() {
            return a.edges().iter().all(|&(x, y)| b.has_edge(map[x], map[y]));
        }
        for w in 0..b.order() {
            if !used[w] {
                used[w] = true;
                map.push(w);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    a.order() == b.order() && a.size() == b.size() && go(a, b, &mut Vec::new(), &mut vec![false; b.order()])
}

#[test]
fn named_families() {
    let k1 = Graph::complete(1);
    assert_eq!((k1.order(), k1.size()), (1, 0));
    let s3 = Graph::star(3);
    assert_eq!((s3.order(), s3.size()), (4, 3));
    assert_eq!(s3.degree_sequence().iter().filter(|&&d| d == 3).count(), 1);
    let p3 = Graph::path(3);
    assert_eq!((p3.order(), p3.size()), (3, 2));
}

#[test]
fn parsing() {
    let g = parse_edge_list("0 1\n1 2").unwrap();
    assert!(brute_iso(&g, &Graph::path(3)));
    assert!(matches!(parse_edge_list("0 0"), Err(Error::InvariantViolation(_))));
    let k1 = parse_json(r#"{"vertices":["a"],"edges":[]}"#).unwrap();
    assert_eq!((k1.order(), k1.size()), (1, 0));
}

#[test]
fn bipartite_and_components() {
    assert!(Graph::complete(2).is_bipartite());
    assert!(!Graph::complete(3).is_bipartite());
    assert!(Graph::cycle(6).is_bipartite());
    assert_eq!(Graph::path(3).connected_components().len(), 1);
    let empty = Graph::from_edges(3, []).unwrap();
    assert_eq!(empty.connected_components().len(), 3);
    let d = product(&Graph::complete(2), &Graph::complete(2), ProductKind::Direct);
    assert_eq!(d.graph.connected_components().len(), 2);
}

#[test]
fn isomorphism_examples() {
    let relabeled = parse_edge_list("x y\ny z").unwrap();
    assert!(are_isomorphic_small(&Graph::path(3), &relabeled).unwrap());
    assert!(!are_isomorphic_small(&Graph::complete(3), &Graph::path(3)).unwrap());
    let c6 = product(&Graph::complete(2), &Graph::complete(3), ProductKind::Direct).graph;
    assert!(are_isomorphic_small(&Graph::cycle(6), &c6).unwrap());
    assert!(brute_iso(&Graph::cycle(6), &c6));
}

#[test]
fn product_identities() {
    let h = Graph::path(4);
    for kind in [ProductKind::Cartesian, ProductKind::Strong, ProductKind::Lexicographic] {
        assert!(brute_iso(&product(&Graph::complete(1), &h, kind).graph, &h), "{kind}");
    }
    assert_eq!(product(&Graph::complete(1), &h, ProductKind::Direct).graph.size(), 0);
    let c4 = product(&Graph::complete(2), &Graph::complete(2), ProductKind::Cartesian).graph;
    assert!(brute_iso(&c4, &Graph::cycle(4)));
}

#[test]
fn projections_and_edge_classes() {
    let k2 = parse_edge_list("a b").unwrap();
    let x2 = parse_edge_list("x y").unwrap();
    let p = product(&k2, &x2, ProductKind::Cartesian);
    let a = p.graph.vertex(&Label::pair("a".into(), "x".into())).unwrap();
    let b = p.graph.vertex(&Label::pair("b".into(), "x".into())).unwrap();
    let e = p.graph.edge_id(a.min(b), a.max(b)).unwrap();
    assert!(matches!(p.project_edge(Side::Left, e).unwrap(), Projection::Edge { factor_edge: Some(0), .. }));
    assert!(matches!(p.project_edge(Side::Right, e).unwrap(), Projection::Collapse(0)));

    let s = product(&Graph::complete(2), &Graph::complete(2), ProductKind::Strong);
    let classes: Vec<EdgeClass> = (0..s.graph.size()).map(|e| s.classify_edge(e).unwrap()).collect();
    assert_eq!(classes.iter().filter(|c| **c == EdgeClass::Cartesian).count(), 4);
    assert_eq!(classes.iter().filter(|c| **c == EdgeClass::NonCartesian).count(), 2);
}

#[test]
fn layers_of_k2_p3() {
    let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Cartesian);
    for h in 0..3 {
        assert!(brute_iso(&p.layer(Side::Left, h).unwrap(), &Graph::complete(2)));
    }
    let d = product(&Graph::complete(2), &Graph::path(3), ProductKind::Direct);
    assert!(d.layer(Side::Left, 0).is_err());
}

#[test]
fn matching_validation() {
    let c4 = Graph::cycle(4);
    assert!(is_k_matching(&Graph::complete(3), &EdgeSet::new(), 2));
    assert!(is_k_matching(&c4, &c4.all_edges(), 2));
    assert!(!is_k_matching(&Graph::path(3), &Graph::path(3).all_edges(), 1));
    assert_eq!(unmatched_vertices(&Graph::path(3), &set(&[0])).unwrap().len(), 1);
    assert_eq!(unmatched_vertices(&Graph::complete(3), &EdgeSet::new()).unwrap().len(), 3);
    assert!(unmatched_vertices(&c4, &c4.all_edges()).unwrap().is_empty());
}

#[test]
fn matching_classification() {
    let c = classify_matching(&Graph::complete(2), &set(&[0]), 1).unwrap();
    assert!(c.valid && c.perfect && c.maximal == Some(true));
    let c = classify_matching(&Graph::path(3), &set(&[0]), 1).unwrap();
    assert!(c.valid && c.near_perfect && c.maximal == Some(true));

    let p = product(&Graph::complete(2), &Graph::complete(3), ProductKind::Direct);
    let f = fast(&p, &set(&[0]), &set(&[0])).unwrap();
    let c = classify_matching(&p.graph, &f.edges, 1).unwrap();
    assert!(c.valid && c.maximal == Some(true));
    assert_eq!(c.size, 2);
    assert_eq!(brute_max(&p.graph, 1), 3);
}

#[test]
fn oracle_examples() {
    for (g, k, m, u) in [
        (Graph::star(3), 1, 1, 2),
        (Graph::complete(4), 3, 6, 0),
        (Graph::complete(4), 2, 4, 0),
    ] {
        let r = max_k_matching(&g, k, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.m_k, r.u_k), (m, u));
        assert_eq!(r.m_k, brute_max(&g, k));
        assert!(r.exhaustive);
    }
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_k_matchings(&Graph::complete(2), 1).unwrap().len(), 2);
    assert_eq!(enumerate_k_matchings(&Graph::path(3), 1).unwrap().len(), 3);
    let k3 = enumerate_k_matchings(&Graph::complete(3), 2).unwrap();
    assert_eq!(k3.len(), brute_sizes(&Graph::complete(3), 2).len());
    assert_eq!(k3, vec![EdgeSet::new(), Graph::complete(3).all_edges()]);
}

#[test]
fn fbast_on_k2_p3() {
    let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Cartesian);
    let gh = fbast(&p, &set(&[0]), &set(&[0]), Orientation::GH).unwrap();
    assert_eq!(gh.len(), 3);
    assert!(gh.part(PartName::FillG).is_none_or(|m| m.is_empty()));
    let hg = fbast(&p, &set(&[0]), &set(&[0]), Orientation::HG).unwrap();
    assert_eq!(hg.len(), 3);
    assert!(fbast(&p, &EdgeSet::new(), &EdgeSet::new(), Orientation::GH).unwrap().is_empty());
    assert!(gh.edges.iter().all(|e| p.classify_edge(e).unwrap() == EdgeClass::Cartesian));
}

#[test]
fn fast_examples() {
    let p = product(&Graph::complete(2), &Graph::complete(2), ProductKind::Direct);
    assert_eq!(fast(&p, &set(&[0]), &set(&[0])).unwrap().len(), 2);
    assert!(fast(&p, &EdgeSet::new(), &set(&[0])).unwrap().is_empty());

    let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Direct);
    let mg = max_k_matching(&p.left, 1, DEFAULT_BUDGET).unwrap().witness_ids;
    let mh = max_k_matching(&p.right, 1, DEFAULT_BUDGET).unwrap().witness_ids;
    let f = fast(&p, &mg, &mh).unwrap();
    assert!(is_k_matching(&p.graph, &f.edges, 1));
    assert_eq!(f.len(), brute_max(&p.graph, 1));
}

#[test]
fn fcast_examples() {
    let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Strong);
    let f = fcast(&p, &set(&[0]), &set(&[0])).unwrap();
    assert_eq!(f.len(), 3);
    assert!(is_k_matching(&p.graph, &f.edges, 1));
    assert!(unmatched_vertices(&p.graph, &f.edges).unwrap().is_empty());

    let p = product(&Graph::complete(2), &Graph::complete(2), ProductKind::Strong);
    assert_eq!(fcast(&p, &set(&[0]), &set(&[0])).unwrap().edges, fast(&p, &set(&[0]), &set(&[0])).unwrap().edges);
    assert!(fcast(&p, &EdgeSet::new(), &EdgeSet::new()).unwrap().is_empty());
}

#[test]
fn classification_examples() {
    let p = product(&Graph::complete(2), &Graph::complete(3), ProductKind::Cartesian);
    let all = p.right.all_edges();
    let c = classify_construction(ConstructionKind::Boxast, &p, &set(&[0]), &all, Orientation::GH).unwrap();
    assert!(c.is_k_matching);
    assert_eq!(c.condition, ConditionTag::PerfectPrimary);
    let built = fbast(&p, &set(&[0]), &all, Orientation::GH).unwrap();
    assert!(is_k_matching(&p.graph, &built.edges, 1));

    let p = product(&Graph::cycle(3), &Graph::cycle(4), ProductKind::Strong);
    let (mg, mh) = (p.left.all_edges(), p.right.all_edges());
    let c = classify_construction(ConstructionKind::Circledast, &p, &mg, &mh, Orientation::GH).unwrap();
    assert_eq!((c.k, c.condition), (Some(4), ConditionTag::M4));
    assert!(is_k_matching(&p.graph, &fcast(&p, &mg, &mh).unwrap().edges, 4));

    let c = classify_construction(ConstructionKind::Circledast, &p, &EdgeSet::new(), &EdgeSet::new(), Orientation::GH)
        .unwrap();
    assert_eq!((c.k, c.condition), (Some(1), ConditionTag::M3));
}

#[test]
fn size_formula_examples() {
    let (k2, p3) = (Graph::complete(2), Graph::path(3));
    let s = SizeInputs::of(&k2, &p3, &set(&[0]), &set(&[0]), 1, 1);
    assert_eq!(predicted_size(ConstructionKind::Boxast, Orientation::GH, &s).unwrap(), 3);
    assert_eq!(predicted_size(ConstructionKind::Ast, Orientation::GH, &s).unwrap(), 2);
    let (c3, c4) = (Graph::cycle(3), Graph::cycle(4));
    let s = SizeInputs::of(&c3, &c4, &c3.all_edges(), &c4.all_edges(), 2, 2);
    assert_eq!(predicted_size(ConstructionKind::Circledast, Orientation::GH, &s).unwrap(), 4 * 12 / 2);
}

#[test]
fn boxast_well_behaved_examples() {
    let (s3, k3) = (Graph::star(3), Graph::complete(3));
    let r = check_boxast(&s3, &k3, ProductKind::Cartesian, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::False);
    let p = product(&s3, &k3, ProductKind::Cartesian);
    assert_eq!(brute_max(&p.graph, 1), 6);

    let r = check_boxast(&Graph::complete(2), &Graph::path(3), ProductKind::Cartesian, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::True);

    for kind in [ProductKind::Cartesian, ProductKind::Strong, ProductKind::Lexicographic] {
        for k in 1..=2 {
            let r = check_boxast(&Graph::path(4), &Graph::complete(1), kind, k, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.verdict, Verdict::True, "{kind} k={k}");
        }
    }
}

#[test]
fn circledast_well_behaved_examples() {
    let strong = ProductKind::Strong;
    let r = check_circledast(&Graph::complete(2), &Graph::complete(3), strong, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::True);
    let r = check_circledast(&Graph::cycle(3), &Graph::cycle(4), strong, 4, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::True);
    let r = check_circledast(&Graph::complete(2), &Graph::complete(2), strong, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::True);
}

#[test]
fn ast_well_behaved_examples() {
    let (k2, p3, k3) = (Graph::complete(2), Graph::path(3), Graph::complete(3));
    let direct = ProductKind::Direct;
    assert_eq!(check_ast(&k2, &p3, direct, 1, DEFAULT_BUDGET).unwrap().verdict, Verdict::True);
    assert_eq!(brute_max(&product(&k2, &p3, direct).graph, 1), 2);
    assert_eq!(check_ast(&k2, &k3, direct, 1, DEFAULT_BUDGET).unwrap().verdict, Verdict::False);
    assert_eq!(brute_max(&product(&k2, &k3, direct).graph, 1), 3);
    assert_eq!(check_ast(&k2, &k2, ProductKind::Strong, 1, DEFAULT_BUDGET).unwrap().verdict, Verdict::True);
}

#[test]
fn seven_conditions_examples() {
    for (g, h, expected) in [
        (Graph::complete(2), Graph::path(3), true),
        (Graph::star(3), Graph::complete(3), false),
        (Graph::complete(2), Graph::complete(2), true),
    ] {
        let r = equivalence_suite(&g, &h, ProductKind::Cartesian, 1, DEFAULT_BUDGET).unwrap();
        let group = r.group(BOXAST_SEVEN).unwrap();
        assert!(group.conditions.iter().all(|c| c.verdict == Verdict::from(expected)), "{group:?}");
    }
}

#[test]
fn weak_hom_examples() {
    let (k2, p3) = (Graph::complete(2), Graph::path(3));
    for kind in ProductKind::ALL {
        let p = product(&k2, &p3, kind);
        assert!(is_whp(&p, &EdgeSet::new(), &set(&[0]), &set(&[1])).unwrap().whp);
        let everything = p.graph.all_edges();
        let whp = is_whp(&p, &everything, &p.left.all_edges(), &p.right.all_edges()).unwrap().whp;
        // p_H of a lexicographic product can map an edge onto a non-edge.
        assert_eq!(whp, kind != ProductKind::Lexicographic, "{kind}");
    }
    for kind in [ProductKind::Cartesian, ProductKind::Strong, ProductKind::Lexicographic] {
        let p = product(&k2, &p3, kind);
        let f = fbast(&p, &set(&[0]), &set(&[0]), Orientation::GH).unwrap();
        assert!(is_whp(&p, &f.edges, &set(&[0]), &set(&[0])).unwrap().whp);
    }

    let p = product(&k2, &p3, ProductKind::Direct);
    let u = allowed_edges(&p, &set(&[0]), &set(&[1])).unwrap();
    assert_eq!(u.allowed, fast(&p, &set(&[0]), &set(&[1])).unwrap().edges);

    let p = product(&k2, &p3, ProductKind::Cartesian);
    assert!(allowed_edges(&p, &EdgeSet::new(), &EdgeSet::new()).unwrap().allowed.is_empty());

    let p = product(&k2, &k2, ProductKind::Lexicographic);
    let u = allowed_edges(&p, &set(&[0]), &EdgeSet::new()).unwrap();
    assert!(u.allowed.iter().all(|e| !matches!(p.project_edge(Side::Left, e).unwrap(), Projection::Collapse(_))));
    assert_eq!(u.allowed.len(), 2);
}

#[test]
fn weak_hom_maximum_sizes() {
    let (k2, p3) = (Graph::complete(2), Graph::path(3));
    let p = product(&k2, &p3, ProductKind::Direct);
    let r = max_whp_k_matching(&p, &set(&[0]), &set(&[0]), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.m_k, (2 * 2) / 2);

    let p = product(&k2, &p3, ProductKind::Cartesian);
    let r = max_whp_k_matching(&p, &set(&[0]), &set(&[0]), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.m_k, (2 * 3) / 2);
    let r = max_whp_k_matching(&p, &EdgeSet::new(), &EdgeSet::new(), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.m_k, 0);

    // Maximum in W_1 on S3□K3 is not a perfect matching.
    let p = product(&Graph::star(3), &Graph::complete(3), ProductKind::Cartesian);
    let r = max_whp_k_matching(&p, &set(&[0]), &set(&[0]), 1, DEFAULT_BUDGET).unwrap();
    assert!(r.m_k < 6);
    assert_eq!(brute_max(&p.graph, 1), 6);
}
