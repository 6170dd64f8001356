use klr_specht::combinatorics::{
    detect_cp_pair, enumerate_cp_pairs, one_row_degree, Multicharge, Multipartition, Node,
    QuantumChar, Shape, Tableau,
};

fn mp(s: &str) -> Multipartition {
    Multipartition::parse(s).unwrap()
}

fn rows(r: &[&[&[usize]]]) -> Tableau {
    Tableau::from_rows(&r.iter().map(|c| c.iter().map(|x| x.to_vec()).collect()).collect::<Vec<_>>())
        .unwrap()
}

#[test]
fn three_component_one_row_pair() {
    let e = QuantumChar::Finite(4);
    let kappa = Multicharge(vec![0, 2, 1]);
    let p = detect_cp_pair(&mp("(;3,2,2;4,3)"), &mp("(3;3,2,2;4)"), e, &kappa).unwrap();
    assert_eq!(p.nu, mp("(3;3,2,2;4,3)"));
    assert!(p.one_row);
    assert_eq!((p.a, p.b, p.c), (2, 4, 4));
    assert_eq!(p.degree, 6);
    assert_eq!(one_row_degree(&p), Some(6));
    let chain_tl: Vec<Node> = p.chain.iter().map(Shape::first_node).collect();
    assert_eq!(
        chain_tl,
        vec![Node::new(1, 1, 1), Node::new(2, 1, 3), Node::new(2, 3, 1), Node::new(3, 1, 4), Node::new(3, 2, 1)]
    );
    assert_eq!(
        p.initial_extended(),
        rows(&[&[&[15, 16, 17]], &[&[1, 2, 3], &[4, 5], &[6, 7]], &[&[8, 9, 10, 11], &[12, 13, 14]]])
    );
    assert_eq!(
        p.extended_target(),
        rows(&[&[&[3, 7, 14]], &[&[1, 2, 6], &[4, 5], &[11, 13]], &[&[8, 9, 10, 12], &[15, 16, 17]]])
    );
    assert_eq!(
        p.target_tableau(),
        rows(&[&[&[3, 7, 14]], &[&[1, 2, 6], &[4, 5], &[11, 13]], &[&[8, 9, 10, 12]]])
    );
}

#[test]
fn three_component_straight_pair() {
    let e = QuantumChar::Finite(9);
    let kappa = Multicharge(vec![0, 4, 6]);
    let lambda = mp("(5,5,4,3,3,1;2,2,1;3,3,2)");
    let mu = mp("(8,7,4,3,3,1;2,2,1;3)");
    let p = detect_cp_pair(&lambda, &mu, e, &kappa).unwrap();
    assert_eq!(p.nu, mp("(8,7,4,3,3,1;2,2,1;3,3,2)"));
    assert_eq!(p.mu_star.partition(), Some(vec![3, 2]));
    assert_eq!((p.a, p.b, p.d), (4, 6, 4));
    assert_eq!(p.degree, 6);
    assert_eq!(p.chain.len(), 4);
    assert_eq!(p.chain[1].partition(), Some(vec![3, 1]));
    assert_eq!(p.chain[1].first_node(), Node::new(1, 5, 1));
    assert_eq!(p.chain[2].partition(), Some(vec![1, 1]));
    assert_eq!(p.chain[2].first_node(), Node::new(2, 1, 2));
    let init = rows(&[
        &[&[1, 2, 3, 4, 5, 35, 36, 37], &[6, 7, 8, 9, 10, 38, 39], &[11, 12, 13, 14], &[15, 16, 17], &[18, 19, 20], &[21]],
        &[&[22, 23], &[24, 25], &[26]],
        &[&[27, 28, 29], &[30, 31, 32], &[33, 34]],
    ]);
    assert_eq!(p.initial_extended(), init);
    let target = rows(&[
        &[&[1, 2, 3, 4, 5, 18, 19, 20], &[6, 7, 8, 9, 10, 21, 34], &[11, 12, 13, 14], &[15, 16, 17], &[23, 31, 32], &[25]],
        &[&[22, 30], &[24, 33], &[26]],
        &[&[27, 28, 29], &[35, 36, 37], &[38, 39]],
    ]);
    assert_eq!(p.extended_target(), target);
    let t = p.target_tableau();
    assert_eq!(t.shape(), &mu);
    assert!(t.is_standard());
}

#[test]
fn degree_equals_target_degree_difference() {
    let e = QuantumChar::Finite(4);
    let kappa = Multicharge(vec![0]);
    let p = detect_cp_pair(&mp("(3,2)"), &mp("(5)"), e, &kappa).unwrap();
    let t = p.target_tableau();
    let diff = t.degree(e, &kappa).unwrap() - Tableau::initial(&p.lambda).degree(e, &kappa).unwrap();
    assert_eq!(diff, 1);
    assert_eq!(p.degree, 1);
}

#[test]
fn degree_matches_tableau_degrees_in_small_sweep() {
    let kappas = [vec![0], vec![0, 1], vec![0, 2]];
    for e in [QuantumChar::Finite(3), QuantumChar::Finite(4), QuantumChar::Infinite] {
        for k in &kappas {
            let kappa = Multicharge(k.clone());
            for n in 1..=6 {
                for p in enumerate_cp_pairs(n, e, &kappa) {
                    let t = p.target_tableau();
                    assert!(t.is_standard(), "{} {}", p.lambda, p.mu);
                    let diff = t.degree(e, &kappa).unwrap()
                        - Tableau::initial(&p.lambda).degree(e, &kappa).unwrap();
                    assert_eq!(diff, p.degree, "{} -> {} at e={e}", p.lambda, p.mu);
                    assert_eq!(t.residue_sequence(e, &kappa), Tableau::initial(&p.lambda).residue_sequence(e, &kappa));
                    if let Some(d) = one_row_degree(&p) {
                        assert_eq!(d, p.degree);
                    }
                    assert!(p.degree >= p.mu_star.rank() as i64);
                }
            }
        }
    }
}
