use colorinv::picture::{Bounds, PictureShape};
use colorinv::restitution::{restitute, W0Point};
use colorinv::{Bicharacter, EpsAlgebra, FiniteAbelianGroup, GradedSpace, MixedShape, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn configs() -> Vec<(Bicharacter, Vec<&'static str>)> {
    let z2 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    let z3 = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
    vec![
        (Bicharacter::super_sign(), vec!["0", "1"]),
        (
            Bicharacter::new(z2, vec![vec![1, 1], vec![1, 1]]).unwrap(),
            vec!["0,0", "0,1", "1,0"],
        ),
        (
            Bicharacter::new(z3, vec![vec![0, 1], vec![2, 0]]).unwrap(),
            vec!["0,0", "0,1", "1,0"],
        ),
    ]
}

#[test]
fn closed_form_matches_composed_maps() {
    let shapes: [(Vec<(usize, usize)>, Vec<usize>); 5] = [
        (vec![(1, 1)], vec![2]),
        (vec![(2, 1), (0, 1)], vec![1, 1]),
        (vec![(1, 2), (1, 0)], vec![1, 1]),
        (vec![(1, 1), (1, 1)], vec![2, 1]),
        (vec![(2, 1), (1, 2)], vec![1, 1]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (chi, degs) in configs() {
        let space = GradedSpace::from_residues(chi.clone(), &degs).unwrap();
        let alg = EpsAlgebra::with_pools(chi.clone(), 2, 4).unwrap();
        for (summands, mult) in &shapes {
            let shape = MixedShape::new(space.clone(), summands.clone()).unwrap();
            let p = PictureShape::new(shape.clone(), mult.clone()).unwrap();
            for sigma in Permutation::all(p.n()) {
                let phi = p.build_phi(&sigma, &Bounds::default()).unwrap();
                for _ in 0..3 {
                    let u = W0Point::random(&shape, &alg, &mut rng).unwrap();
                    let lhs = restitute(&phi.polynomial, &u).unwrap();
                    let rhs = p
                        .t_sigma_eval(&sigma, &u.picture_word(&p).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{summands:?} {mult:?} sigma {sigma}");
                }
            }
        }
    }
}

#[test]
fn invariant_under_gl_epsilon() {
    let shapes: [(Vec<(usize, usize)>, Vec<usize>); 3] = [
        (vec![(1, 1)], vec![2]),
        (vec![(2, 1), (0, 1)], vec![1, 1]),
        (vec![(1, 2), (1, 0)], vec![1, 1]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nonzero = 0;
    for (chi, degs) in configs() {
        let space = GradedSpace::from_residues(chi.clone(), &degs).unwrap();
        let alg = EpsAlgebra::with_pools(chi.clone(), 2, 4).unwrap();
        for (summands, mult) in &shapes {
            let shape = MixedShape::new(space.clone(), summands.clone()).unwrap();
            let p = PictureShape::new(shape.clone(), mult.clone()).unwrap();
            for sigma in Permutation::all(p.n()) {
                let phi = p.build_phi(&sigma, &Bounds::default()).unwrap();
                for seed in 0..2 {
                    let u = W0Point::random(&shape, &alg, &mut rng).unwrap();
                    let t = colorinv::operator::random_gl_epsilon(&space, &alg, seed).unwrap();
                    let moved = u.act_gl(&t, &t.invert().unwrap()).unwrap();
                    let before = restitute(&phi.polynomial, &u).unwrap();
                    nonzero += usize::from(!before.is_zero());
                    assert_eq!(
                        before,
                        restitute(&phi.polynomial, &moved).unwrap(),
                        "{summands:?} sigma {sigma}"
                    );
                }
            }
        }
    }
    assert!(nonzero > 20);
}
