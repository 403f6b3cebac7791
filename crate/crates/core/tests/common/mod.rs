#![allow(dead_code)]

use fibertrace::Probe;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Records node and leaf visits in order.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Recorder {
    pub nodes: Vec<(u32, u32)>,
    pub leaves: Vec<(u32, u32)>,
}

impl Probe for Recorder {
    fn node(&mut self, start: u32, size: u32) {
        self.nodes.push((start, size));
    }
    fn leaf(&mut self, start: u32, size: u32) {
        self.leaves.push((start, size));
    }
}
