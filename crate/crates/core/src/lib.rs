// SPDX-License-Identifier: Apache-2.0

//! Braided equivariant crossed modules, graded categorical groups, and the
//! cohomology needed to classify their graded braided functors and the
//! corresponding Γ-module extensions.

pub mod abelian;
pub mod catgroup;
pub mod cohomology;
pub mod corpus;
pub mod crossed;
pub mod extensions;
pub mod functor;
pub mod group;
pub mod linalg;
pub mod reduced;
pub mod report;
pub mod scenario;
pub mod search;
