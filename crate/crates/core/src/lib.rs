//! Robustness of maximal independent sets, minimal dominating sets and
//! maximal matchings against edge removals that keep the graph connected.

pub mod classes;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod robustness;
pub mod solutions;
pub mod sweep;

pub use classes::{existential_search, universal_class_check, ClassVerdict, ClassWitness, Method, Mode};
pub use constructions::{gen_family, Family};
pub use enumeration::{enumerate_solutions, SolutionList};
pub use error::{Error, Result};
pub use graph::{parse_graph, Edge, EdgeSet, Graph, VertexSet};
pub use robustness::{check_k_robust, min_break_budget, Budget, Guard, RobustnessVerdict, Witness};
pub use solutions::{check_solution, Problem, Solution};
