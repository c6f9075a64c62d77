use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::liealg::{elementary, GradedLieAlgebra, LieAlgebra};

/// Split simple algebras available for parabolic gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleType {
    /// `sl(n)`, `n >= 2`.
    Sl(usize),
    /// `sp(4)`.
    Sp4,
}

impl SimpleType {
    pub fn rank(&self) -> usize {
        match self {
            SimpleType::Sl(n) => n - 1,
            SimpleType::Sp4 => 2,
        }
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<SimpleType> {
        let lower = s.to_ascii_lowercase();
        if lower == "sp4" {
            return Ok(SimpleType::Sp4);
        }
        if let Some(n) = lower.strip_prefix("sl") {
            if let Ok(n) = n.parse::<usize>() {
                if n >= 2 {
                    return Ok(SimpleType::Sl(n));
                }
            }
        }
        Err(Error::Parse {
            field: "type".into(),
            message: format!("unknown simple type '{s}' (expected sl<n> or sp4)"),
        })
    }
}

/// Grading of a split simple algebra by a set of crossed simple roots
/// (1-based). A root vector gets degree equal to the sum of its coefficients
/// on the crossed simple roots.
pub fn parabolic_grading(ty: SimpleType, crossed: &[usize]) -> Result<GradedLieAlgebra> {
    let rank = ty.rank();
    if crossed.iter().any(|&c| c == 0 || c > rank) {
        return Err(Error::Precondition(format!("crossed roots must lie in 1..={rank}")));
    }
    let is_crossed = |c: usize| crossed.contains(&c);
    match ty {
        SimpleType::Sl(n) => {
            let mut labels = Vec::new();
            let mut mats = Vec::new();
            let mut degrees = Vec::new();
            let root_degree = |i: usize, j: usize| (i..j).filter(|&c| is_crossed(c + 1)).count() as i32;
            for i in 0..n {
                for j in i + 1..n {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    mats.push(elementary(n, i, j));
                    degrees.push(root_degree(i, j));
                }
            }
            for i in 0..n - 1 {
                labels.push(format!("H{}", i + 1));
                mats.push(elementary(n, i, i).sub(&elementary(n, i + 1, i + 1)));
                degrees.push(0);
            }
            for i in 0..n {
                for j in i + 1..n {
                    labels.push(format!("E{}{}", j + 1, i + 1));
                    mats.push(elementary(n, j, i));
                    degrees.push(-root_degree(i, j));
                }
            }
            GradedLieAlgebra::new(LieAlgebra::from_matrices(labels, &mats)?, degrees)
        }
        SimpleType::Sp4 => {
            let e = |i: usize, j: usize| elementary(4, i - 1, j - 1);
            // Root vectors for a1 = e1 - e2, a2 = 2 e2 with coefficients (c1, c2).
            let positive: Vec<(&str, Matrix, (i32, i32))> = vec![
                ("X_a1", e(1, 2).sub(&e(4, 3)), (1, 0)),
                ("X_a2", e(2, 4), (0, 1)),
                ("X_a1+a2", e(1, 4).add(&e(2, 3)), (1, 1)),
                ("X_2a1+a2", e(1, 3), (2, 1)),
            ];
            let degree = |(c1, c2): (i32, i32)| {
                (if is_crossed(1) { c1 } else { 0 }) + (if is_crossed(2) { c2 } else { 0 })
            };
            let mut labels = Vec::new();
            let mut mats = Vec::new();
            let mut degrees = Vec::new();
            for (l, m, c) in &positive {
                labels.push(l.to_string());
                mats.push(m.clone());
                degrees.push(degree(*c));
            }
            labels.push("H1".into());
            mats.push(e(1, 1).sub(&e(3, 3)));
            degrees.push(0);
            labels.push("H2".into());
            mats.push(e(2, 2).sub(&e(4, 4)));
            degrees.push(0);
            for (l, m, c) in &positive {
                labels.push(l.replace("X_", "Y_"));
                mats.push(m.transpose());
                degrees.push(-degree(*c));
            }
            GradedLieAlgebra::new(LieAlgebra::from_matrices(labels, &mats)?, degrees)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(g: &GradedLieAlgebra) -> Vec<(i32, usize)> {
        g.degree_dims().into_iter().collect()
    }

    #[test]
    fn sl3_borel_dims() {
        let g = parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap();
        assert_eq!(dims(&g), vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]);
        assert!(g.check_graded() && g.alg.check_jacobi());
    }

    #[test]
    fn sp4_borel_dims() {
        let g = parabolic_grading(SimpleType::Sp4, &[1, 2]).unwrap();
        assert_eq!(dims(&g), vec![(-3, 1), (-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1), (3, 1)]);
        assert!(g.check_graded() && g.alg.check_jacobi());
        assert!(!g.alg.killing_form().determinant().eq(&crate::exactla::int(0)));
    }

    #[test]
    fn sl3_contact_grading() {
        let g = parabolic_grading(SimpleType::Sl(3), &[1]).unwrap();
        assert_eq!(dims(&g), vec![(-1, 2), (0, 4), (1, 2)]);
    }

    #[test]
    fn sl4_gradings() {
        let g = parabolic_grading(SimpleType::Sl(4), &[1, 2]).unwrap();
        assert_eq!(dims(&g), vec![(-2, 2), (-1, 3), (0, 5), (1, 3), (2, 2)]);
        assert!(g.check_graded());
        let b = parabolic_grading(SimpleType::Sl(4), &[1, 2, 3]).unwrap();
        assert_eq!(b.top_degree(), 3);
    }

    #[test]
    fn parse_types() {
        assert_eq!("sl3".parse::<SimpleType>().unwrap(), SimpleType::Sl(3));
        assert_eq!("SP4".parse::<SimpleType>().unwrap(), SimpleType::Sp4);
        assert!("g2".parse::<SimpleType>().is_err());
    }
}
