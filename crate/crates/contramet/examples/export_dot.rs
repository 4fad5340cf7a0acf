//! Draw an instance with Graphviz.
//!
//! The functional graph of the map: an edge from each point to its image.
//! Tree roots (the fixed points) are double circles, the designated one
//! is filled, and the infinite chain tails are cut with ellipsis nodes.
//! Pipe the output through `dot -Tsvg` to get a picture.
//!
//! Run with: cargo run --example export_dot

use num::bigint::BigInt;

use contramet::dot::{render_dot, DotOptions};
use contramet::{Component, Graft, Instance, PointRef, Rational};

fn main() {
    let inst = Instance::new(
        Rational::new(1, 2).expect("2 is nonzero"),
        vec![
            Component::Tree { parent: vec![0, 0, 0, 1] },
            Component::Tree { parent: vec![0] },
            Component::Chain {
                two_sided: true,
                grafts: vec![Graft { anchor: BigInt::from(-2), parent: vec![0, 0] }],
            },
        ],
        PointRef { component: 0, node: 0 },
    );
    print!("{}", render_dot(&inst, &DotOptions::default()));
}
