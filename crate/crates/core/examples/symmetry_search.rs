//! Symmetry, submodule lattices and near-symmetry of finite modules.

use alexmod::ext::{enumerate_submodules, finite_structure, is_nearly_symmetric, is_symmetric, FiniteModuleData, Limits};
use alexmod::fixtures;

fn main() {
    let lim = Limits::default();
    let a = finite_structure(&fixtures::two_t_minus_one_mod(5), &lim).unwrap();
    let b = finite_structure(&fixtures::plus_one_mod(3), &lim).unwrap();
    println!("Z/5 with t = 3 symmetric: {:?}", is_symmetric(&a, &lim).unwrap());
    println!("Z/3 with t = -1 symmetric: {:?}", is_symmetric(&b, &lim).unwrap());
    println!("A + dual(A) symmetric: {:?}", is_symmetric(&a.direct_sum(&a.dual()), &lim).unwrap());
    let v = a.power(2);
    println!("submodules of (Z/5)^2: {}", enumerate_submodules(&v, &lim).unwrap().len());
    let mixed = b.direct_sum(&FiniteModuleData::cyclic(2, 1));
    let n = is_nearly_symmetric(&mixed, &lim).unwrap();
    println!("Z/3 + Z/2 nearly symmetric: {:?}, witness order {:?}", n.verdict, n.witness.map(|w| w.order()));
}
