mod common;

use common::*;
use princon_core::congruence::*;
use princon_core::enumerate::enumerate_lattices;
use princon_core::lattice::{chain, downset_lattice, join_irreducibles};
use princon_core::{Congruence, CongruenceError, FiniteLattice, Poset};
use proptest::prelude::*;

fn small_lattices(max: usize) -> Vec<FiniteLattice> {
    (1..=max).flat_map(|n| enumerate_lattices(n).unwrap()).collect()
}

#[test]
fn closure_agrees_with_brute_force_up_to_seven() {
    for l in small_lattices(7) {
        let fast = congruence_lattice(&l);
        let slow = brute_force_con_lattice(&l).unwrap();
        assert_eq!(fast, slow, "{:?}", l.covers());
    }
}

#[test]
fn brute_force_refuses_large_lattices() {
    let big = chain(11);
    assert!(matches!(
        brute_force_congruences(&big),
        Err(CongruenceError::TooLarge { .. })
    ));
}

#[test]
fn congruence_lattices_are_distributive() {
    for l in small_lattices(8) {
        assert!(congruence_lattice(&l).to_lattice().is_distributive());
    }
}

#[test]
fn every_member_is_a_congruence_and_join_of_principals() {
    for l in small_lattices(7) {
        let con = congruence_lattice(&l);
        for theta in con.members() {
            assert!(is_congruence(&l, theta));
            let mut acc = Congruence::identity(l.len());
            for (a, b) in l.covers() {
                if theta.related(*a, *b) {
                    acc = join_congruences(&l, &acc, &principal_congruence(&l, *a, *b));
                }
            }
            assert_eq!(&acc, theta);
        }
    }
}

#[test]
fn join_and_meet_stay_in_the_lattice() {
    for l in small_lattices(6) {
        let con = congruence_lattice(&l);
        for a in con.members() {
            for b in con.members() {
                let j = join_congruences(&l, a, b);
                let m = meet_congruences(a, b);
                assert!(con.index_of(&j).is_some() && con.index_of(&m).is_some());
                assert!(a.refines(&j) && b.refines(&j));
                assert!(m.refines(a) && m.refines(b));
            }
        }
    }
}

#[test]
fn principal_congruence_properties() {
    for l in small_lattices(7) {
        let n = l.len();
        let all = brute_force_congruences(&l).unwrap();
        for a in 0..n {
            for b in 0..n {
                let theta = principal_congruence(&l, a, b);
                assert!(is_congruence(&l, &theta));
                assert!(theta.related(a, b));
                // Least among all congruences relating a and b.
                for phi in &all {
                    if phi.related(a, b) {
                        assert!(theta.refines(phi));
                    }
                }
                // con(a, b) = con(a ∧ b, a ∨ b).
                assert_eq!(theta, principal_congruence(&l, l.meet(a, b), l.join(a, b)));
            }
        }
    }
}

#[test]
fn principal_congruence_is_monotone_in_the_interval() {
    for l in small_lattices(7) {
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                if !l.leq(a, b) {
                    continue;
                }
                let outer = principal_congruence(&l, a, b);
                for c in 0..n {
                    for d in 0..n {
                        if l.leq(a, c) && l.leq(c, d) && l.leq(d, b) {
                            assert!(principal_congruence(&l, c, d).refines(&outer));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn join_irreducible_congruences_are_prime_interval_congruences() {
    for l in small_lattices(7) {
        let con = congruence_lattice(&l);
        let primes: Vec<Congruence> = prime_interval_congruences(&l).into_iter().map(|(_, c)| c).collect();
        for i in con.join_irreducibles() {
            assert!(primes.contains(&con.members()[i]));
        }
        let ec = edge_congruences(&l);
        assert_eq!(ec.edge_class.len(), l.covers().len());
        for (e, &(a, b)) in l.covers().iter().enumerate() {
            assert_eq!(ec.classes[ec.edge_class[e]], principal_congruence(&l, a, b));
        }
    }
}

#[test]
fn all_principal_matches_scan() {
    for l in small_lattices(7) {
        let con = congruence_lattice(&l);
        let scan = con.members().iter().find(|t| is_principal(&l, t).is_none()).cloned();
        match all_principal(&l) {
            Principality::AllPrincipal => assert!(scan.is_none()),
            Principality::Counterexample(theta) => {
                assert!(scan.is_some());
                assert!(is_principal(&l, &theta).is_none());
                assert!(is_congruence(&l, &theta));
            }
        }
    }
}

#[test]
fn four_element_chain_counterexample() {
    let c4 = lattice(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]);
    let Principality::Counterexample(theta) = all_principal(&c4) else {
        panic!("C4 has a non-principal congruence");
    };
    assert_eq!(theta.describe(&c4), "{0,a},{b,1}");
    assert_eq!(congruence_lattice(&c4).len(), 8);
}

#[test]
fn small_examples() {
    assert_eq!(congruence_lattice(&m3()).len(), 2);
    assert_eq!(congruence_lattice(&n5()).len(), 5);
    let con_n5 = congruence_lattice(&n5()).to_lattice();
    assert_eq!(join_irreducibles(&con_n5).len(), 3);
    assert_eq!(all_principal(&m3()), Principality::AllPrincipal);
    let one = chain(1);
    assert_eq!(congruence_lattice(&one).len(), 1);
}

#[test]
fn chain_congruences_are_boolean() {
    for n in 1..=7 {
        let con = congruence_lattice(&chain(n));
        assert_eq!(con.len(), 1 << (n - 1));
    }
}

#[test]
fn distributive_lattice_has_ji_poset_as_con_ji() {
    // For distributive D, Con D is Boolean on |Ji(D)| atoms.
    let p = Poset::new(names(&["a", "b", "c"]), &pairs(&[("a", "b")])).unwrap();
    let d = downset_lattice(&p);
    assert_eq!(congruence_lattice(&d).len(), 8);
}

#[test]
fn describe_and_blocks() {
    let l = chain(4);
    let theta = Congruence::from_blocks(4, &[&[0, 1], &[2, 3]]);
    assert_eq!(theta.describe(&l), "{c0,c1},{c2,c3}");
    assert_eq!(theta.blocks(), vec![vec![0, 1], vec![2, 3]]);
    assert_eq!(theta.block_count(), 2);
    assert!(Congruence::identity(4).refines(&theta));
    assert!(theta.refines(&Congruence::full(4)));
    assert_eq!(Congruence::from_labels(&[7, 7, 3, 3]), theta);
}

proptest! {
    #[test]
    fn principal_congruence_on_random_pairs(k in 0usize..53, a in 0usize..7, b in 0usize..7) {
        let all = enumerate_lattices(7).unwrap();
        let l = &all[k];
        let theta = principal_congruence(l, a, b);
        prop_assert!(is_congruence(l, &theta));
        prop_assert_eq!(is_principal(l, &theta).is_some(), true);
        let sym = principal_congruence(l, b, a);
        prop_assert_eq!(theta, sym);
    }
}
