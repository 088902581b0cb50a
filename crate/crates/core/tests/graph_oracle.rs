mod common;

use common::{name, random_dag, rng, Dag};
use rand::prelude::*;

fn names(v: &[usize]) -> Vec<String> {
    v.iter().map(|&i| name(i)).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Disjoint nonempty `a`, `b` and a possibly empty `s`.
fn random_sets(dag: &Dag, rng: &mut impl Rng) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut all: Vec<usize> = (0..dag.n).collect();
    all.shuffle(rng);
    let na = rng.random_range(1..dag.n);
    let nb = rng.random_range(1..=dag.n - na);
    let ns = rng.random_range(0..=dag.n - na - nb);
    let a = all[..na].to_vec();
    let b = all[na..na + nb].to_vec();
    let s = all[na + nb..na + nb + ns].to_vec();
    (a, b, s)
}

#[test]
fn d_separation_matches_path_enumeration() {
    let mut r = rng(11);
    let mut separated = 0;
    for _ in 0..500 {
        let dag = random_dag(&mut r, 7);
        let g = dag.graph();
        let (a, b, s) = random_sets(&dag, &mut r);
        let (na, nb, ns) = (names(&a), names(&b), names(&s));
        let fast = g.d_separated(&refs(&na), &refs(&nb), &refs(&ns)).unwrap();
        assert_eq!(
            fast,
            dag.d_separated_brute(&a, &b, &s),
            "{dag:?} a={a:?} b={b:?} s={s:?}"
        );
        assert_eq!(
            fast,
            g.d_separated(&refs(&nb), &refs(&na), &refs(&ns)).unwrap()
        );
        separated += fast as usize;
    }
    assert!(
        separated > 50 && separated < 450,
        "{separated} of 500 separated"
    );
}

#[test]
fn direct_parents_are_admissible() {
    let mut r = rng(12);
    let mut checked = 0;
    for _ in 0..300 {
        let dag = random_dag(&mut r, 7);
        let g = dag.graph();
        let y = r.random_range(0..dag.n);
        let x = r.random_range(0..dag.n);
        let (yn, xn) = (name(y), name(x));
        let parents = g.parents(&yn).unwrap();
        if x == y || parents.contains(&xn.as_str()) {
            continue;
        }
        assert!(
            g.validate_backdoor(&parents, &yn, &xn).unwrap().holds(),
            "{dag:?} y={y} x={x}"
        );
        checked += 1;
    }
    assert!(checked > 100);
}
