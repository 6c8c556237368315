use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Random approval profile: every voter approves every candidate
/// independently with probability `density`, redrawing empty ballots.
/// The same arguments always give the same instance.
pub fn generate_instance(
    n: usize,
    m: usize,
    k: usize,
    density: f64,
    seed: u64,
) -> Result<Instance> {
    if n == 0 || m == 0 {
        return Err(Error::BadParams(format!(
            "need n, m >= 1, got n = {n}, m = {m}"
        )));
    }
    if k == 0 || k > m {
        return Err(Error::BadParams(format!(
            "need 1 <= k <= m, got k = {k}, m = {m}"
        )));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::BadParams(format!(
            "density {density} outside (0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ballots = (0..n)
        .map(|_| loop {
            let ballot: Vec<usize> = (0..m).filter(|_| rng.random_bool(density)).collect();
            if !ballot.is_empty() {
                break ballot;
            }
        })
        .collect();
    Instance::new(m, k, ballots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_density_gives_full_ballots() {
        let inst = generate_instance(4, 4, 2, 1.0, 0).unwrap();
        assert!(inst.ballots().iter().all(|b| b == &[0, 1, 2, 3]));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_instance(6, 5, 3, 0.4, 17).unwrap();
        let b = generate_instance(6, 5, 3, 0.4, 17).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            generate_instance(3, 3, 4, 0.5, 0),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            generate_instance(3, 3, 0, 0.5, 0),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            generate_instance(3, 3, 1, 0.0, 0),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            generate_instance(3, 3, 1, 1.5, 0),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            generate_instance(0, 3, 1, 0.5, 0),
            Err(Error::BadParams(_))
        ));
    }
}
