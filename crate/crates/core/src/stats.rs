//! Instrumentation shared by the cylinder traversal and the box baseline.
//!
//! Intersectors are generic over a [`Probe`]; the unit type `()` compiles
//! every hook away, [`Counters`] tallies them.

use std::ops::AddAssign;

/// Observer for intersector events. All hooks default to no-ops.
pub trait Probe {
    /// A node of the subdivision is about to be tested against the ray.
    /// `start` and `size` are the node's parameter interval in units of 2^-23.
    fn node(&mut self, _start: u32, _size: u32) {}
    /// A bounding cylinder was intersected.
    fn cylinder_test(&mut self) {}
    /// A lateral bounding box was tested.
    fn aabb_test(&mut self) {}
    /// `n` ray/plane crossings were computed.
    fn plane_tests(&mut self, _n: u32) {}
    /// A node was split; `both_hit` when the far child was deferred.
    fn split(&mut self, _both_hit: bool) {}
    /// Traversal resumed at a deferred node.
    fn backtrack(&mut self) {}
    /// A leaf passed its bounding test.
    fn leaf(&mut self, _start: u32, _size: u32) {}
}

impl Probe for () {}

impl<P: Probe + ?Sized> Probe for &mut P {
    fn node(&mut self, start: u32, size: u32) {
        (**self).node(start, size)
    }
    fn cylinder_test(&mut self) {
        (**self).cylinder_test()
    }
    fn aabb_test(&mut self) {
        (**self).aabb_test()
    }
    fn plane_tests(&mut self, n: u32) {
        (**self).plane_tests(n)
    }
    fn split(&mut self, both_hit: bool) {
        (**self).split(both_hit)
    }
    fn backtrack(&mut self) {
        (**self).backtrack()
    }
    fn leaf(&mut self, start: u32, size: u32) {
        (**self).leaf(start, size)
    }
}

/// Event totals over one or many intersection calls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// Loop iterations (nodes visited).
    pub iterations: u64,
    pub cylinder_tests: u64,
    pub aabb_tests: u64,
    pub plane_tests: u64,
    pub both_hits: u64,
    pub backtracks: u64,
    pub leaves: u64,
}

impl Counters {
    /// Bounding-volume tests of either kind.
    pub fn pruning_tests(&self) -> u64 {
        self.cylinder_tests + self.aabb_tests
    }
}

impl Probe for Counters {
    fn node(&mut self, _start: u32, _size: u32) {
        self.iterations += 1;
    }
    fn cylinder_test(&mut self) {
        self.cylinder_tests += 1;
    }
    fn aabb_test(&mut self) {
        self.aabb_tests += 1;
    }
    fn plane_tests(&mut self, n: u32) {
        self.plane_tests += u64::from(n);
    }
    fn split(&mut self, both_hit: bool) {
        self.both_hits += u64::from(both_hit);
    }
    fn backtrack(&mut self) {
        self.backtracks += 1;
    }
    fn leaf(&mut self, _start: u32, _size: u32) {
        self.leaves += 1;
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Self) {
        self.iterations += rhs.iterations;
        self.cylinder_tests += rhs.cylinder_tests;
        self.aabb_tests += rhs.aabb_tests;
        self.plane_tests += rhs.plane_tests;
        self.both_hits += rhs.both_hits;
        self.backtracks += rhs.backtracks;
        self.leaves += rhs.leaves;
    }
}
