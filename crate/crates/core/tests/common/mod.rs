#![allow(dead_code)]

use std::cmp::Ordering;

use num_integer::Integer;
use proptest::prelude::*;
use toric_k0::stackyfan::StackyFan;

fn half(v: &[i64; 2]) -> u8 {
    u8::from(v[1] < 0 || (v[1] == 0 && v[0] < 0))
}

fn by_angle(a: &[i64; 2], b: &[i64; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| (a[1] * b[0]).cmp(&(a[0] * b[1])))
}

fn cross(a: &[i64; 2], b: &[i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Rays sorted counterclockwise with consecutive cones; `None` unless the
/// directions are distinct and every gap is less than a half turn.
pub fn complete_plane_fan(mut rays: Vec<[i64; 2]>) -> Option<(Vec<Vec<i64>>, Vec<Vec<usize>>)> {
    rays.retain(|v| v[0].gcd(&v[1]) == 1);
    rays.sort_by(by_angle);
    rays.dedup();
    let k = rays.len();
    if k < 3 || (0..k).any(|i| cross(&rays[i], &rays[(i + 1) % k]) <= 0) {
        return None;
    }
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Some((rays.iter().map(|v| v.to_vec()).collect(), cones))
}

/// Complete simplicial fans in the plane with small primitive rays.
pub fn plane_fan(max_rays: usize, bound: i64) -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<usize>>)> {
    prop::collection::vec([-bound..=bound, -bound..=bound], 3..=max_rays)
        .prop_filter_map("not a complete fan", complete_plane_fan)
}

pub fn build(rays: &[Vec<i64>], cones: &[Vec<usize>]) -> StackyFan {
    StackyFan::free(rays, cones).unwrap()
}

/// A unimodular matrix from a list of elementary operations.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> toric_k0::exactlinalg::IntMatrix {
    use toric_k0::exactlinalg::IntMatrix;
    let mut u = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = IntMatrix::identity(n);
        if i == j {
            e[(i, i)] = (-1).into();
        } else {
            e[(i, j)] = k.into();
        }
        u = &e * &u;
    }
    u
}
