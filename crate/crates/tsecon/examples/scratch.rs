use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use tsecon::unitroot::*;

fn random_walk(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = 0.0;
    (0..n).map(|_| { level += rng.sample::<f64, _>(StandardNormal); level }).collect()
}

fn quantiles(mut v: Vec<f64>) -> [f64; 3] {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| v[(p * (v.len() as f64 - 1.0)).round() as usize];
    [q(0.01), q(0.05), q(0.10)]
}

fn sim(n: usize, reps: u64, det: Deterministics, salt: u64) -> [f64; 3] {
    let spec = UnitRootSpec::new(UnitRootTest::DfGls, det).with_lags(LagPolicy::Fixed(0));
    let stats: Vec<f64> = (0..reps).into_par_iter().map(|i| {
        let y = random_walk(n, salt.wrapping_add(i).wrapping_mul(0x9E3779B97F4A7C15) ^ (n as u64));
        unit_root_test_values(&y, &spec).unwrap().statistic
    }).collect();
    quantiles(stats)
}

fn main() {
    println!("== dfgls trend (validate ERS memory) ==");
    for n in [50usize, 100, 200] {
        let q = sim(n, 200_000, Deterministics::ConstantTrend, 1234);
        println!("n={n:4} sim 1%={:7.3} 5%={:7.3} 10%={:7.3}", q[0], q[1], q[2]);
    }
    println!("== dfgls demeaned grid ==");
    for n in [25usize, 32, 40, 50, 65, 80, 100, 130, 160, 200, 300, 400, 600, 800] {
        let q = sim(n, 400_000, Deterministics::Constant, 777);
        println!("n={n:4} t={:4} 1%={:8.4} 5%={:8.4} 10%={:8.4}", n - 1, q[0], q[1], q[2]);
    }
}
