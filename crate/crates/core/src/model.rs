//! Coordinates in the standard orthonormal models of the classical types.
//!
//! `A_n` uses `ε_1 … ε_{n+1}` with `α_i = ε_i − ε_{i+1}`. `B_n`, `C_n`, `D_n`
//! use `ε_1 … ε_n` with `α_i = ε_i − ε_{i+1}` for `i < n` and last simple root
//! `ε_n`, `2ε_n`, `ε_{n−1} + ε_n` respectively.

use crate::cartan::Family;
use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem};

fn model_len(rs: &RootSystem) -> Result<usize> {
    let n = rs.rank();
    match rs.cartan_type().family() {
        Family::A => Ok(n + 1),
        Family::B | Family::C | Family::D => Ok(n),
        _ => Err(Error::Invalid(format!(
            "no ε-model for type {}",
            rs.cartan_type()
        ))),
    }
}

/// The root with the given ε-coordinates.
pub fn from_epsilon(rs: &RootSystem, v: &[i32]) -> Result<Root> {
    let len = model_len(rs)?;
    if v.len() != len {
        return Err(Error::Invalid(format!(
            "expected {len} ε-coordinates, got {}",
            v.len()
        )));
    }
    let n = rs.rank();
    let prefix: Vec<i32> = v
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let twice: Vec<i32> = match rs.cartan_type().family() {
        Family::A => {
            if prefix[n] != 0 {
                return Err(Error::NotARoot(v.to_vec()));
            }
            prefix[..n].iter().map(|c| 2 * c).collect()
        }
        Family::B => prefix.iter().map(|c| 2 * c).collect(),
        Family::C => {
            let mut c: Vec<i32> = prefix[..n - 1].iter().map(|c| 2 * c).collect();
            c.push(prefix[n - 1]);
            c
        }
        Family::D => {
            let mut c: Vec<i32> = prefix[..n - 2].iter().map(|c| 2 * c).collect();
            c.push(prefix[n - 2] - v[n - 1]);
            c.push(prefix[n - 1]);
            c
        }
        _ => unreachable!(),
    };
    if twice.iter().any(|c| c % 2 != 0) {
        return Err(Error::NotARoot(v.to_vec()));
    }
    let coords: Vec<i32> = twice.iter().map(|c| c / 2).collect();
    rs.root(&coords).ok_or_else(|| Error::NotARoot(v.to_vec()))
}

/// ε-coordinates of a root.
pub fn to_epsilon(rs: &RootSystem, r: Root) -> Result<Vec<i32>> {
    let len = model_len(rs)?;
    let n = rs.rank();
    let c = rs.check(r).map(|r| rs.coords(r))?;
    let mut v = vec![0; len];
    let mut add = |i: usize, k: i32| v[i] += k;
    for (i, &ci) in c.iter().enumerate() {
        let last = i + 1 == n;
        match rs.cartan_type().family() {
            Family::A => {
                add(i, ci);
                add(i + 1, -ci);
            }
            Family::B if last => add(i, ci),
            Family::C if last => add(i, 2 * ci),
            Family::D if last => {
                add(n - 2, ci);
                add(n - 1, ci);
            }
            _ => {
                add(i, ci);
                add(i + 1, -ci);
            }
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn round_trip_all_roots() {
        for t in ["A1", "A3", "B2", "B4", "C3", "C4", "D4", "D5"] {
            let rs = sys(t);
            for r in rs.roots() {
                let v = to_epsilon(&rs, r).unwrap();
                assert_eq!(from_epsilon(&rs, &v).unwrap(), r, "{t}");
            }
        }
    }

    #[test]
    fn standard_shapes() {
        let b3 = sys("B3");
        assert_eq!(to_epsilon(&b3, b3.theta()).unwrap(), vec![1, 1, 0]);
        assert_eq!(to_epsilon(&b3, b3.theta_s()).unwrap(), vec![1, 0, 0]);
        let c3 = sys("C3");
        assert_eq!(to_epsilon(&c3, c3.theta()).unwrap(), vec![2, 0, 0]);
        let d4 = sys("D4");
        assert_eq!(to_epsilon(&d4, d4.theta()).unwrap(), vec![1, 1, 0, 0]);
        assert!(from_epsilon(&b3, &[2, 0, 0]).is_err());
        assert!(from_epsilon(&c3, &[1, 1, 1]).is_err());
        assert!(from_epsilon(&sys("G2"), &[1, 0]).is_err());
    }
}
