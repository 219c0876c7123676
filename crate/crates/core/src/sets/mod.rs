//! Matrix convex sets: polytopes and their `Wmin`/`Wmax`, free spectrahedra of monic pencils,
//! the matrix cube and diamond, the matrix ball `𝔅` and the self-dual ball `𝔇`.
//!
//! Only polytopal `Wmin` is decided; the Euclidean ball enters through sampled facets or through
//! polytopes inscribed in it.

mod dual;
mod interior;
mod membership;
mod pencil;
mod polytope;

pub use dual::{origin_is_interior, polar_dual_polytope, INTERIOR_MARGIN};
pub use interior::{zero_interior_range, InteriorEstimate, DEFAULT_DIRECTIONS, DEFAULT_REFINE_STEPS};
pub use membership::{
    ball_margin, ball_member, cube_member, diamond_wmax_member, diamond_worst_sign, facet_margin, selfdual_member,
    selfdual_norm, wmax_ball_sampled, wmax_margin, wmax_member, wmin_member, DEFAULT_BALL_FACETS, MAX_SIGN_DIM,
};
pub use pencil::{ball_pencil, cube_pencil, pencil_eval, pencil_margin, pencil_member, switch_matrices, Pencil, TupleArg};
pub use polytope::{
    cube, diamond, regular_polygon, right_simplex, sign_vectors, simplex3, simplex3_vertices, Facet, Polytope, POLYTOPE_TOL,
};
