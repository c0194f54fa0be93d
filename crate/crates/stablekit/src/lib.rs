//! Densities of one-dimensional α-stable laws with rational index α = p/q.
//!
//! The [`pdf_engine`] evaluates f(x, t) from convergent Fox H series,
//! their hypergeometric resummations and closed forms; the [`oracle`] inverts
//! the characteristic function numerically and serves as independent ground
//! truth; [`resolvent`] covers the resolvent measure and its m-fold
//! convolution limit.

pub mod cli;
pub mod oracle;
pub mod params;
pub mod pdf_engine;
pub mod resolvent;
pub mod specfun;
