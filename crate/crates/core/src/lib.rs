//! Galois groups of generic trinomials `x^n + a x^m + b` in positive
//! characteristic, together with the exact machinery used to check them:
//! finite fields, polynomial factorization, sparse multivariate reduction,
//! Newton polygons and permutation groups of small degree.

pub mod gf;
pub mod upoly;
pub mod mvpoly;
pub mod newton;
pub mod permgrp;
pub mod classify;
pub mod sampler;
pub mod identities;
