//! Named diagrams, groups and modules used by the examples, tests and
//! `selftest`.

use crate::diagrams::{Arc, DiskArcPresentation, GaussCode};
use crate::groups::GroupPresentation;
use crate::laurent::ZPoly;
use crate::modules::PresentedModule;
use crate::words::Word;
use rand::Rng;

pub const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
pub const FIGURE_EIGHT: &str = "O1+ U2+ O3- U4- O2+ U1+ O4- U3-";
pub const HOPF: &str = "O1+ U2+, U1+ O2+";
/// A 2-component virtual link whose module is `Λ/((t−1)², 2(t−1))`.
pub const VIRTUAL_EXAMPLE: &str = "O1+ U2- O3+ U4+, O2- U3+ O4+ U1+";

pub fn code(text: &str) -> GaussCode {
    GaussCode::parse(text).expect("fixture codes are valid")
}

/// Every named diagram.
pub fn diagrams() -> Vec<(&'static str, GaussCode)> {
    vec![
        ("unknot", GaussCode::trivial(1)),
        ("trivial-2", GaussCode::trivial(2)),
        ("trivial-3", GaussCode::trivial(3)),
        ("virtual-kink", code("O1+ U1+")),
        ("trefoil", code(TREFOIL)),
        ("figure-eight", code(FIGURE_EIGHT)),
        ("hopf", code(HOPF)),
        ("virtual-example", code(VIRTUAL_EXAMPLE)),
    ]
}

/// `⟨a, b | a b a⁻¹ b⁻¹⟩`.
pub fn hopf_group() -> GroupPresentation {
    GroupPresentation::new(2, vec![Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap()
}

/// `⟨x, y | x = u x u⁻¹, y = v y v⁻¹⟩` with `u = y x⁻¹ y⁻¹`, `v = x⁻¹ y x⁻¹`.
pub fn example_group() -> GroupPresentation {
    let (x, y) = (Word::gen(0), Word::gen(1));
    let u = Word::from_pairs(&[(1, 1), (0, -1), (1, -1)]);
    let v = Word::from_pairs(&[(0, -1), (1, 1), (0, -1)]);
    let r1 = Word::product([&u, &x, &u.inverse(), &x.inverse()]);
    let r2 = Word::product([&v, &y, &v.inverse(), &y.inverse()]);
    GroupPresentation::new(2, vec![r1, r2]).unwrap()
}

/// Two disks `x, y` and one handle on each, pierced as in `example_group`.
pub fn example_diskarc() -> DiskArcPresentation {
    DiskArcPresentation::new(
        2,
        vec![
            Arc { from: 0, to: 0, through: vec![(1, 1), (0, 1), (1, -1)] },
            Arc { from: 1, to: 1, through: vec![(0, 1), (1, -1), (0, 1)] },
        ],
    )
    .unwrap()
}

fn z(low: i64, c: &[i64]) -> ZPoly {
    ZPoly::z(low, c)
}

/// `Λ/(t + 1, a)`.
pub fn plus_one_mod(a: i64) -> PresentedModule {
    PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(a)])
}

/// `Λ/(2t − 1, a)`.
pub fn two_t_minus_one_mod(a: i64) -> PresentedModule {
    PresentedModule::cyclic(&[z(0, &[-1, 2]), ZPoly::z_int(a)])
}

/// `Λ/((t − 1)², 2(t − 1))`.
pub fn example_module() -> PresentedModule {
    PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])])
}

/// `Λ^{r−1} ⊕ (Λ/(2t − 1, 5))ⁿ`.
pub fn separating_family(n: usize, r: usize) -> PresentedModule {
    PresentedModule::free(r - 1).direct_sum(&two_t_minus_one_mod(5).power(n))
}

/// Named presentation matrices of cokernel-free modules with the number of
/// components they realize.
pub fn realization_matrices() -> Vec<(&'static str, PresentedModule, usize)> {
    vec![
        ("[t+1, 3]", plus_one_mod(3), 1),
        ("[2t-1, 5]", two_t_minus_one_mod(5), 1),
        ("[(t-1)^2, 2(t-1)]", example_module(), 2),
        ("empty r=1", PresentedModule::free(0), 1),
        ("empty r=2", PresentedModule::free(1), 2),
        ("empty r=3", PresentedModule::free(2), 3),
    ]
}

/// A grid of ten modules with known `β` and `DM`.
pub fn module_grid() -> Vec<(&'static str, PresentedModule)> {
    vec![
        ("zero", PresentedModule::zero()),
        ("free-1", PresentedModule::free(1)),
        ("free-2", PresentedModule::free(2)),
        ("trefoil", PresentedModule::cyclic(&[z(0, &[1, -1, 1])])),
        ("figure-eight", PresentedModule::cyclic(&[z(0, &[1, -3, 1])])),
        ("t+1,3", plus_one_mod(3)),
        ("2t-1,5", two_t_minus_one_mod(5)),
        ("example", example_module()),
        ("free+trefoil", PresentedModule::free(1).direct_sum(&PresentedModule::cyclic(&[z(0, &[1, -1, 1])]))),
        ("(2t-1,5)^2", two_t_minus_one_mod(5).power(2)),
    ]
}

/// A random cokernel-free presentation with at most `max_rows × max_cols`
/// entries of degree at most `deg` and coefficients in `[−coef, coef]`.
pub fn random_cokernel_free<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, deg: usize, coef: i64) -> PresentedModule {
    loop {
        let rows = rng.gen_range(1..=max_rows);
        let cols = rng.gen_range(1..=max_cols);
        let columns: Vec<Vec<ZPoly>> = (0..cols)
            .map(|_| {
                (0..rows)
                    .map(|_| {
                        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-coef..=coef)).collect();
                        ZPoly::z(0, &c)
                    })
                    .collect()
            })
            .collect();
        let m = PresentedModule::from_columns(rows, columns);
        if m.is_cokernel_free() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::satoh_consistent;
    use crate::modules::DEFAULT_PRIMES;

    #[test]
    fn classical_knots() {
        let m = code(TREFOIL).wirtinger().alexander_module(0).unwrap();
        assert_eq!(m.alexander_polynomial(0), z(0, &[1, -1, 1]));
        let m = code(FIGURE_EIGHT).wirtinger().alexander_module(0).unwrap();
        assert_eq!(m.alexander_polynomial(0), z(0, &[1, -3, 1]));
        let h = code(HOPF).wirtinger().alexander_module(0).unwrap();
        let l = PresentedModule::cyclic(&[ZPoly::t_minus_one()]);
        assert!(h.battery_eq(&l, &DEFAULT_PRIMES));
        assert!(hopf_group().alexander_module(0).unwrap().battery_eq(&l, &DEFAULT_PRIMES));
    }

    #[test]
    fn virtual_example_agrees() {
        let target = example_module();
        let d = code(VIRTUAL_EXAMPLE);
        assert!(d.wirtinger().alexander_module(0).unwrap().battery_eq(&target, &DEFAULT_PRIMES));
        assert!(example_group().alexander_module(0).unwrap().battery_eq(&target, &DEFAULT_PRIMES));
        assert_eq!(example_diskarc().wirtinger(), example_group());
        assert_eq!(example_diskarc().genera(), vec![1, 1]);
        assert_eq!(d.satoh().genera(), vec![1, 1]);
        for (_, g) in diagrams() {
            assert!(satoh_consistent(&g));
        }
    }
}
