use std::collections::HashMap;

use crate::gf::Code;
use crate::linalg::MatrixFq;

use super::{MatrixGroupRep, RepError};

pub const DEFAULT_GROUP_CAP: usize = 2048;

/// All elements of the matrix group generated by a representation.
///
/// Element 0 is the identity, elements `1..=k` are the distinct generators
/// in label order, and the rest follow in breadth-first discovery order of
/// left products `g * h`.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    elements: Vec<MatrixFq>,
    orders: Vec<u64>,
    center: Vec<usize>,
}

impl GroupClosure {
    pub fn elements(&self) -> &[MatrixFq] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Multiplicative order of each element, aligned with `elements()`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn center_indices(&self) -> &[usize] {
        &self.center
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.elements.len()
    }

    /// Least common multiple of all element orders.
    pub fn group_exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn center_exponent(&self) -> u64 {
        self.center.iter().fold(1, |a, &i| lcm(a, self.orders[i]))
    }

    /// Index of an element, if it belongs to the group.
    pub fn index_of(&self, m: &MatrixFq) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn close_group(rep: &MatrixGroupRep, cap: usize) -> Result<GroupClosure, RepError> {
    let field = rep.field();
    let id = MatrixFq::identity(field, rep.dim());
    let mut seen: HashMap<Vec<Code>, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut push = |m: MatrixFq, elements: &mut Vec<MatrixFq>| -> Result<(), RepError> {
        if seen.contains_key(m.as_slice()) {
            return Ok(());
        }
        if elements.len() == cap {
            return Err(RepError::CapExceeded(cap));
        }
        seen.insert(m.as_slice().to_vec(), elements.len());
        elements.push(m);
        Ok(())
    };
    push(id, &mut elements)?;
    for g in rep.generators() {
        push(g.matrix.clone(), &mut elements)?;
    }
    let mut next = 0;
    while next < elements.len() {
        let h = elements[next].clone();
        for g in rep.generators() {
            push(g.matrix.mul(&h)?, &mut elements)?;
        }
        next += 1;
    }

    let orders = elements
        .iter()
        .map(|e| {
            let mut k = 1u64;
            let mut pw = e.clone();
            while !pw.is_identity() {
                pw = pw.mul(e)?;
                k += 1;
            }
            Ok(k)
        })
        .collect::<Result<Vec<_>, RepError>>()?;

    let center = elements
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            rep.generators().iter().all(|g| {
                let a = g.matrix.mul(e).expect("square");
                let b = e.mul(&g.matrix).expect("square");
                a == b
            })
        })
        .map(|(i, _)| i)
        .collect();

    Ok(GroupClosure { elements, orders, center })
}
