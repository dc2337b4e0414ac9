// scratch: validate triple equations against the hand-derived solution
use qheun::algebra::{triple_residuals, TripleSolution};
use qheun::families::Params;
use qheun::rat::{rat, Rat};

fn main() {
    let q = rat(2, 1);
    let (a, b, c) = (rat(1, 3), rat(3, 4), rat(1, 7));
    let p = Params::new(q.clone(), a.clone(), b.clone(), c.clone()).unwrap();
    let s2 = Rat::one() + &a * &b * &q; // 1 + abq
    let sigma = &a * &b + &a * &c + a.clone() + c.clone(); // ab + ac + a + c
    let t1 = Rat::one();
    let ac = &a * &c;
    let q2m1 = &q * &q - Rat::one();
    // E6: t1 [t1 (q-1) s2 + t3] ac (q^2-1)^3 = 1
    let bracket = (&ac * &q2m1.pow(3)).recip(); // = t1(q-1)s2 + t3 given t1 = 1
    let t3 = &bracket - &(&(&q - &Rat::one()) * &s2);
    let t0 = &t1 * &q * &(&q - &Rat::one()) * &sigma;
    // G1: alpha^2 ab (q^2-1)^2 = 1
    let alpha = (&a * &b * &q2m1.pow(2)).recip().sqrt_exact().expect("ab square");
    let beta = &alpha * &s2;
    let t1p = -&(&q * &alpha * &bracket);
    let t0p = &t1p * &(Rat::one() - q.clone()) * &sigma;
    let t3p = &(&t1 / &alpha) - &(&t1p * &(&q.recip() - &Rat::one()) * &s2);

    let mut sol = TripleSolution {
        w1_taus: (t1.clone(), t3.clone(), t0.clone()),
        w2_taus: (t1p.clone(), t3p.clone(), t0p.clone()),
        alpha: alpha.clone(),
        beta: beta.clone(),
        omegas: [Rat::zero(), Rat::zero(), Rat::zero()],
    };
    let res = triple_residuals(&p, &sol).unwrap();
    for (i, r) in res.iter().enumerate() {
        println!("residual {} (omega=0): support {:?}", i + 1, r.support());
        if r.support() == vec![0] {
            println!("   zero-shift coeff: {}", r.coeff(0));
        }
    }
    // If each residual is a constant multiple of I, that constant is omega_i.
    let omega: Vec<Rat> = res
        .iter()
        .map(|r| {
            if r.is_zero() {
                Rat::zero()
            } else {
                r.coeff(0).as_laurent().map(|l| l.coeff(0)).unwrap_or_else(Rat::zero)
            }
        })
        .collect();
    sol.omegas = [omega[0].clone(), omega[1].clone(), omega[2].clone()];
    let res = triple_residuals(&p, &sol).unwrap();
    println!("after omega fix, residuals zero: {:?}", res.iter().map(|r| r.is_zero()).collect::<Vec<_>>());
    println!("solution: t1={t1} t3={t3} t0={t0} t1'={t1p} t3'={t3p} t0'={t0p} alpha={alpha} beta={beta} omegas={:?}", sol.omegas);
}
