use std::sync::OnceLock;

use loopkit::bk::{self, BKElement, BKParams};
use loopkit::iso::{canonical_table, isomorphic};
use loopkit::mult::GenKind;
use loopkit::search::{enumerate, enumerate_sharded, Isomorphs, Mode, SearchSpec};
use loopkit::{LoopTable, Perm};
use proptest::prelude::*;

/// One loop per isomorphism class for orders 1..=5.
fn corpus() -> &'static [LoopTable] {
    static CORPUS: OnceLock<Vec<LoopTable>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (1..=5).flat_map(|n| enumerate(&SearchSpec::new(n).isomorphs(Isomorphs::UpToIso)).unwrap().tables).collect()
    })
}

/// A corpus loop transported along a random permutation fixing 0.
fn relabeled_loop() -> impl Strategy<Value = (usize, LoopTable)> {
    (0..corpus().len(), any::<u64>()).prop_map(|(i, seed)| {
        let q = &corpus()[i];
        let n = q.order();
        let mut images: Vec<usize> = (0..n).collect();
        // Fisher-Yates on 1..n driven by the seed
        let mut s = seed;
        for k in (2..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = 1 + (s >> 33) as usize % k;
            images.swap(k, j);
        }
        (i, q.relabel(&Perm::from_images(images).unwrap()))
    })
}

const VARIETIES: &[&str] =
    &["commutative", "lip", "flx", "lc", "moufang", "lbol", "osborn-1", "cc", "left-a", "buchsteiner"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divisions_invert_multiplication((_, q) in relabeled_loop(), x in 0usize..5, y in 0usize..5) {
        let n = q.order();
        let (x, y) = (x % n, y % n);
        prop_assert_eq!(q.mul(x, q.ldiv(x, y)), y);
        prop_assert_eq!(q.ldiv(x, q.mul(x, y)), y);
        prop_assert_eq!(q.mul(q.rdiv(y, x), x), y);
        prop_assert_eq!(q.rdiv(q.mul(y, x), x), y);
        prop_assert_eq!(q.mul(q.left_inv(x), x), 0);
        prop_assert_eq!(q.mul(x, q.right_inv(x)), 0);
    }

    #[test]
    fn opposite_is_an_involution((_, q) in relabeled_loop()) {
        prop_assert_eq!(q.opposite().opposite(), q.clone());
        prop_assert_eq!(q.principal_isotope(0, 0), q);
    }

    #[test]
    fn isomorphic_iff_same_canonical_form((i, q) in relabeled_loop(), (j, r) in relabeled_loop()) {
        prop_assert_eq!(canonical_table(&q) == canonical_table(&r), i == j);
        if q.order() != r.order() {
            prop_assert!(isomorphic(&q, &r).is_err());
            return Ok(());
        }
        let iso = isomorphic(&q, &r).unwrap();
        prop_assert_eq!(iso.is_some(), i == j);
        if let Some(f) = iso {
            prop_assert_eq!(q.relabel(&f), r);
        }
    }

    #[test]
    fn shards_partition_the_tree(n in 2usize..=5, k in 1usize..=6, v in 0..VARIETIES.len()) {
        let spec = SearchSpec::new(n).require(&[VARIETIES[v]]).mode(Mode::Count);
        let whole = enumerate(&spec).unwrap().found;
        prop_assert_eq!(enumerate_sharded(&spec, k).unwrap().found, whole);
    }

    #[test]
    fn propagation_agrees_with_post_filtering(n in 2usize..=5, v in 0..VARIETIES.len(), w in 0..VARIETIES.len()) {
        let (req, forb) = (VARIETIES[v], VARIETIES[w]);
        prop_assume!(req != forb);
        let base = SearchSpec::new(n).require(&[req]).forbid(&[forb]).mode(Mode::Collect);
        let on = enumerate(&base.clone().propagate(true)).unwrap();
        let off = enumerate(&base.propagate(false)).unwrap();
        prop_assert_eq!(on.tables, off.tables);
        prop_assert!(on.visited <= off.visited);
    }

    #[test]
    fn bk_loop_axioms(p in prop::sample::select(vec![2i64, 3, 5, 7]), a in -400i64..400, x in -1000i64..1000, b in -400i64..400, y in -1000i64..1000) {
        let params = BKParams::new(p).unwrap();
        let (u, v) = (BKElement::new(a, x), BKElement::new(b, y));
        let w = bk::bk_mul(&params, u, v);
        prop_assert_eq!(bk::bk_mul(&params, v, u), w);
        prop_assert_eq!(bk::bk_ldiv(&params, u, w).unwrap(), v);
        prop_assert_eq!(bk::bk_rdiv(&params, w, v).unwrap(), u);
        // v read as a target
        let l = bk::bk_ldiv(&params, u, v).unwrap();
        prop_assert_eq!(bk::bk_mul(&params, u, l), v);
        let r = bk::bk_rdiv(&params, v, u).unwrap();
        prop_assert_eq!(bk::bk_mul(&params, r, u), v);
    }

    #[test]
    fn bk_standard_generators_keep_s(p in prop::sample::select(vec![2i64, 3, 5]), a in -200i64..200, x in -50i64..50, b in -200i64..200, y in -50i64..50, t in -500i64..500) {
        let params = BKParams::new(p).unwrap();
        let (u, v, s) = (BKElement::new(a, x), BKElement::new(b, y), BKElement::new(0, t));
        for kind in [GenKind::LL, GenKind::RR, GenKind::TR] {
            prop_assert!(bk::standard_inner(&params, kind, u, v, s).unwrap().in_s());
        }
    }
}
