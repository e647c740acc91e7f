use mirrorkit_core::field::Field;
use mirrorkit_core::format::{emit, parse};
use mirrorkit_core::invariants::{cartan_matrix, is_symmetric, simple_count};
use mirrorkit_core::mirror::mirror_at;
use mirrorkit_core::quiver::Presentation;
use mirrorkit_core::rewrite::algebra_of;
use mirrorkit_core::sample::random_presentation;
use mirrorkit_core::algebra::Algebra;
use proptest::prelude::*;

fn transpose_eq(c: &[Vec<usize>]) -> bool {
    (0..c.len()).all(|i| (0..c.len()).all(|j| c[i][j] == c[j][i]))
}

fn symmetric_has_symmetric_cartan(a: &Algebra, seed: u64) -> Result<(), String> {
    if is_symmetric(a, 4, seed).is_certified() && !transpose_eq(&cartan_matrix(a).map_err(|e| e.to_string())?) {
        return Err(format!("{} is symmetric with a non-symmetric Cartan matrix", a.provenance));
    }
    Ok(())
}

/// Every invariant a random presentation must satisfy; mirrors are built
/// when `A` is small enough to keep the sweep fast.
fn check(pres: &Presentation, seed: u64) -> Result<(), String> {
    let err = |e: mirrorkit_core::error::Error| e.to_string();
    let (rs, pa) = algebra_of(pres, 12).map_err(err)?;
    if !rs.complete {
        return Err(format!("completion not certified: {:?}", rs.reason));
    }
    let a = &pa.algebra;
    a.check_associative().map_err(err)?;

    for p in &pa.basis {
        let nf = rs.normal_form_path(p).map_err(err)?;
        let again = rs.normal_form(&nf).map_err(err)?;
        if nf != again {
            return Err(format!("normal form of {} is not stable", pres.quiver.path_name(p)));
        }
    }
    for x in &pa.basis {
        for y in &pa.basis {
            if let Some(xy) = x.concat(y) {
                let nf = rs.normal_form_path(&xy).map_err(err)?;
                if rs.normal_form(&nf).map_err(err)? != nf {
                    return Err("normal form of a product is not stable".into());
                }
            }
        }
    }

    let back = parse(&emit(pres)).map_err(err)?;
    if back != *pres {
        return Err("emit/parse round trip changed the presentation".into());
    }

    let (_, again) = algebra_of(pres, 12).map_err(err)?;
    if format!("{:?}", again.algebra) != format!("{:?}", pa.algebra) {
        return Err("rebuilding the algebra is not deterministic".into());
    }

    symmetric_has_symmetric_cartan(a, seed)?;

    if a.dim() > 24 {
        return Ok(());
    }
    let e = a.family_sum(&pres.idempotents[0].1);
    let m = mirror_at(a, &e).map_err(err)?;
    m.tensor.bimodule.check(a).map_err(err)?;
    m.algebra.check_associative().map_err(err)?;
    for c in m.property_suite().map_err(err)? {
        if !c.passed {
            return Err(format!("{}: {}", c.name, c.detail));
        }
    }
    let corner = a.corner(&e).map_err(err)?;
    let (nr, na, nl) = (
        simple_count(&m.algebra).map_err(err)?,
        simple_count(a).map_err(err)?,
        simple_count(&corner.algebra).map_err(err)?,
    );
    if nr != na + nl {
        return Err(format!("#(R) = {} but #(A) + #(eAe) = {} + {}", nr, na, nl));
    }
    let s = m.reduced().map_err(err)?;
    s.algebra().check_associative().map_err(err)?;
    symmetric_has_symmetric_cartan(&m.algebra, seed)?;
    symmetric_has_symmetric_cartan(s.algebra(), seed)
}

#[test]
fn seeded_sweep_over_rationals() {
    for seed in 0..200 {
        let pres = random_presentation(Field::Rationals, seed, 4, 6);
        if let Err(e) = check(&pres, seed) {
            panic!("seed {}: {}\n{}", seed, e, emit(&pres));
        }
    }
}

#[test]
fn seeded_sweep_over_f3() {
    for seed in 0..40 {
        let pres = random_presentation(Field::Prime(3), seed, 4, 6);
        if let Err(e) = check(&pres, seed) {
            panic!("seed {}: {}\n{}", seed, e, emit(&pres));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_presentations(seed in any::<u64>()) {
        let pres = random_presentation(Field::Rationals, seed, 4, 6);
        prop_assert!(check(&pres, seed).is_ok(), "{:?}\n{}", check(&pres, seed), emit(&pres));
    }

    #[test]
    fn arrow_order_does_not_change_dimension(seed in any::<u64>(), shift in 0usize..6) {
        let pres = random_presentation(Field::Rationals, seed, 4, 6);
        let m = pres.quiver.arrows.len();
        prop_assume!(m > 1);
        let perm: Vec<usize> = (0..m).map(|i| (i + shift) % m).collect();
        let other = pres.permute_arrows(&perm).unwrap();
        let d1 = algebra_of(&pres, 12).unwrap().1.algebra.dim();
        let d2 = algebra_of(&other, 12).unwrap().1.algebra.dim();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn cartan_entries_sum_to_dimension(seed in any::<u64>()) {
        let pres = random_presentation(Field::Rationals, seed, 4, 6);
        let a = algebra_of(&pres, 12).unwrap().1.algebra;
        let c = cartan_matrix(&a).unwrap();
        prop_assert_eq!(c.iter().flatten().sum::<usize>(), a.dim());
    }
}

