//! Plain-text element meshes.
//!
//! One element per line, whitespace-separated:
//!
//! ```text
//! S x1 y1 z1 x2 y2 z2 rho                 # segment
//! T x1 y1 z1 x2 y2 z2 x3 y3 z3 rho        # triangle
//! Q x1 ... z4 rho                         # tetrahedron
//! ```
//!
//! `#` starts a comment (whole line or trailing); blank lines are skipped.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::simplex::SimplexElement;

pub fn parse_mesh(text: &str) -> Result<Vec<SimplexElement>> {
    let mut elements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let tag = tokens.next().expect("non-empty line has a first token");
        let n_coords = match tag {
            "S" => 6,
            "T" => 9,
            "Q" => 12,
            other => {
                return Err(Error::Mesh {
                    line,
                    reason: format!("unknown element tag '{other}' (expected S, T or Q)"),
                })
            }
        };
        let rest: Vec<&str> = tokens.collect();
        if rest.len() != n_coords + 1 {
            return Err(Error::Mesh {
                line,
                reason: format!(
                    "tag '{tag}' takes {} numbers, found {}",
                    n_coords + 1,
                    rest.len()
                ),
            });
        }
        let mut nums = [0.0f64; 13];
        for (k, tok) in rest.iter().enumerate() {
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => nums[k] = v,
                Ok(_) => {
                    return Err(Error::Mesh { line, reason: format!("non-finite value '{tok}'") })
                }
                Err(_) => {
                    return Err(Error::Mesh { line, reason: format!("invalid number '{tok}'") })
                }
            }
        }
        let v = |k: usize| Point3::new(nums[3 * k], nums[3 * k + 1], nums[3 * k + 2]);
        let density = nums[n_coords];
        elements.push(match tag {
            "S" => SimplexElement::segment(v(0), v(1), density),
            "T" => SimplexElement::triangle(v(0), v(1), v(2), density),
            _ => SimplexElement::tetrahedron(v(0), v(1), v(2), v(3), density),
        });
    }
    Ok(elements)
}
