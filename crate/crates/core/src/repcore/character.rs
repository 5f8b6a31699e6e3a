//! Irreducible characters of the symmetric group via the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::dims::factorial;
use super::{Partition, RepError};

type CharKey = (Vec<usize>, Vec<usize>);

fn cache() -> &'static RwLock<HashMap<CharKey, BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ^λ` evaluated on the conjugacy class with the given cycle type.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> Result<BigInt, RepError> {
    if lambda.size() != cycle_type.size() {
        return Err(RepError::SizeMismatch {
            expected: lambda.size(),
            found: cycle_type.size(),
        });
    }
    Ok(murnaghan_nakayama(lambda.rows(), cycle_type.rows()))
}

fn murnaghan_nakayama(rows: &[usize], cycles: &[usize]) -> BigInt {
    let Some((&k, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let key = (rows.to_vec(), cycles.to_vec());
    if let Some(v) = cache().read().expect("character cache poisoned").get(&key) {
        return v.clone();
    }

    // first-column hook lengths ("beta numbers"); removing a rim hook of
    // length k moves one bead from b to b - k
    let len = rows.len();
    let beta: Vec<usize> = rows.iter().enumerate().map(|(i, &r)| r + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for &b in &beta {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossings = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut moved: Vec<usize> = beta.iter().map(|&x| if x == b { target } else { x }).collect();
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let new_rows: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&r| r > 0)
            .collect();
        let value = murnaghan_nakayama(&new_rows, rest);
        if crossings % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }

    cache()
        .write()
        .expect("character cache poisoned")
        .insert(key, total.clone());
    total
}

/// Number of permutations with the given cycle type: `n! / Π_k k^{m_k} m_k!`.
pub fn class_size(cycle_type: &Partition) -> BigUint {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &c in cycle_type.rows() {
        *counts.entry(c).or_default() += 1;
    }
    let centralizer = counts.iter().fold(BigUint::one(), |acc, (&k, &m)| {
        acc * BigUint::from(k).pow(m as u32) * factorial(m)
    });
    factorial(cycle_type.size()) / centralizer
}
