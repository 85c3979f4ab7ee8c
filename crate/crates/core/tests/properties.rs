use proptest::prelude::*;

use lensprim::farey::{continued_fraction, nonconnectivity_witness, FareyLabel};
use lensprim::primitivity::{
    is_primitive_positive, is_primitive_whitehead, nonprimitivity_filter, FilterOutcome,
};
use lensprim::sequence::{make_params, pq_sequence, PqParams};
use lensprim::shell::{build_shell, intersection_number, ShellKind};
use lensprim::word::{cyclic_reduce, cyclically_equal, Gen, Letter, Word};

fn letter() -> impl Strategy<Value = Letter> {
    (prop_oneof![Just(Gen::X), Just(Gen::Y)], any::<bool>())
        .prop_map(|(gen, inverse)| Letter { gen, inverse })
}

fn raw(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..max)
}

fn positive_zy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 1..max).prop_map(|bits| {
        Word::reduce(
            bits.into_iter()
                .map(|b| Letter::pos(if b { Gen::Z } else { Gen::Y })),
        )
    })
}

fn params() -> impl Strategy<Value = PqParams> {
    (2i64..70)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter_map("coprime", |(p, q)| make_params(p, q).ok())
}

fn rotate(w: &Word, k: usize) -> Word {
    let s = w.letters();
    if s.is_empty() {
        return w.clone();
    }
    let k = k % s.len();
    Word::reduce(s[k..].iter().chain(&s[..k]).copied())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn reduction_is_idempotent(v in raw(30)) {
        let w = Word::reduce(v.iter().copied());
        prop_assert!(w.len() <= v.len());
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
        let c = cyclic_reduce(&w);
        prop_assert!(c.len() <= w.len());
        prop_assert_eq!(cyclic_reduce(&c.as_word()), c);
    }

    #[test]
    fn involutions(v in raw(30)) {
        let w = Word::reduce(v);
        prop_assert_eq!(w.invert().invert(), w.clone());
        prop_assert_eq!(w.swap_generators(Gen::X, Gen::Y).swap_generators(Gen::X, Gen::Y), w.clone());
        let (a, b) = w.abelianize();
        prop_assert_eq!(w.invert().abelianize(), (-a, -b));
    }

    #[test]
    fn rotations_are_cyclically_equal(v in raw(30), k in 0usize..40) {
        let w = cyclic_reduce(&Word::reduce(v)).as_word();
        prop_assert!(cyclically_equal(&cyclic_reduce(&w), &cyclic_reduce(&rotate(&w, k))));
    }

    #[test]
    fn substitution_abelianizes(w in positive_zy(30)) {
        let xy = Word::reduce([Letter::pos(Gen::X), Letter::pos(Gen::Y)]);
        let z = w.letters().iter().filter(|l| l.gen == Gen::Z).count() as i64;
        prop_assert_eq!(w.substitute(Gen::Z, &xy).abelianize(), (z, w.len() as i64));
    }

    #[test]
    fn oracle_invariance(v in raw(24), k in 0usize..30) {
        let w = Word::reduce(v);
        let verdict = is_primitive_whitehead(&w);
        prop_assert_eq!(is_primitive_whitehead(&w.invert()), verdict);
        prop_assert_eq!(is_primitive_whitehead(&w.swap_generators(Gen::X, Gen::Y)), verdict);
        let c = cyclic_reduce(&w).as_word();
        prop_assert_eq!(is_primitive_whitehead(&rotate(&c, k)), verdict);
        if verdict {
            let (a, b) = w.abelianize();
            prop_assert_eq!(gcd(a, b), 1);
        }
    }

    #[test]
    fn filter_sound_on_long_words(v in raw(40)) {
        let w = Word::reduce(v);
        if nonprimitivity_filter(&w).outcome == FilterOutcome::NotPrimitive {
            prop_assert!(!is_primitive_whitehead(&w));
        }
    }

    #[test]
    fn positive_characterization_agrees(w in positive_zy(40)) {
        prop_assert_eq!(is_primitive_positive(&cyclic_reduce(&w)).unwrap(), is_primitive_whitehead(&w));
    }

    #[test]
    fn sequence_invariants(pr in params()) {
        prop_assert!(pr.q_prime >= 1 && 2 * pr.q_prime <= pr.p);
        let prod = pr.q * pr.q_prime % pr.p;
        prop_assert!(prod == 1 % pr.p || prod == pr.p - 1);
        prop_assert_eq!(make_params(pr.p as i64, pr.q_prime as i64).unwrap().q_prime, pr.q);
        prop_assert_eq!(pr.connected, pr.q == 1 || pr.r == 1 || pr.r == pr.q - 1);
        let seq = pq_sequence(pr);
        prop_assert!(seq.symmetry_failures().is_empty());
        for (j, w) in seq.words.iter().enumerate() {
            let z = w.letters().iter().filter(|l| l.gen == Gen::Z).count();
            prop_assert_eq!(z, j);
        }
    }

    #[test]
    fn shell_invariants(pr in params(), i in 0u64..70, j in 0u64..70) {
        let s = build_shell(pr, ShellKind::Q);
        for e in &s.entries {
            prop_assert_eq!(e.boundary_word.abelianize(), (e.index as i64, pr.p as i64));
        }
        let (i, j) = (i % (pr.p + 1), j % (pr.p + 1));
        if i < j {
            let n = intersection_number(&s, i, j).unwrap();
            prop_assert_eq!(n, j - i - 1);
            // reversed shell reindexing
            let rev = build_shell(pr, ShellKind::PMinusQ);
            prop_assert_eq!(intersection_number(&rev, pr.p - j, pr.p - i).unwrap(), n);
        } else {
            prop_assert!(intersection_number(&s, i, j).is_err());
        }
    }

    #[test]
    fn witness_labels_follow_closed_form(pr in params()) {
        if let Ok(tr) = nonconnectivity_witness(pr) {
            for d in &tr.disks {
                prop_assert_eq!(d.label, FareyLabel::closed_form(d.label.fraction, &pr));
            }
            prop_assert_eq!(tr.last().label.e, pr.q as i64 + 1);
        }
    }

    #[test]
    fn continued_fraction_round_trip(num in 2u64..500, den in 1u64..500) {
        match continued_fraction(num, den) {
            Ok(cf) => {
                prop_assert!(cf.iter().all(|&a| a >= 1));
                prop_assert!(*cf.last().unwrap() >= 2);
                // fold back to a fraction
                let (mut a, mut b) = (1u64, 0u64);
                for &c in cf.iter().rev() {
                    (a, b) = (c * a + b, a);
                }
                prop_assert_eq!((a, b), (num, den));
            }
            Err(_) => prop_assert!(num <= den || gcd(num as i64, den as i64) != 1),
        }
    }
}
