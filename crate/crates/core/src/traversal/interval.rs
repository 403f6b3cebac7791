/// Size of the whole parameter domain in interval units; one unit is 2^-23,
/// the spacing of `f32` values in `[1, 2)`.
pub const ROOT_SIZE: u32 = 1 << 23;

/// Deepest subdivision level the interval encoding can represent.
pub const MAX_DEPTH: u32 = 23;

/// Leaf size for a subdivision depth, clamped to [`MAX_DEPTH`].
pub const fn min_size_for_depth(depth: u32) -> u32 {
    let depth = if depth > MAX_DEPTH { MAX_DEPTH } else { depth };
    ROOT_SIZE >> depth
}

/// Converts the integer interval `(start, size)` to `[u0, u1]` by writing
/// `start` into the mantissa of `1.0`. Exact for every valid pair.
#[inline]
pub fn get_interval(start: u32, size: u32) -> (f32, f32) {
    const ONE: u32 = 0x3f80_0000;
    const TWO: u32 = 0x4000_0000;
    let ui0 = ONE | start;
    let u0 = f32::from_bits(ui0) - 1.0;
    let ui1 = (ui0 + size).min(TWO);
    let u1 = f32::from_bits(ui1) - 1.0;
    (u0, u1)
}

/// Complete iteration state of the stackless traversal.
///
/// `bit_string` holds one bit per subdivision level whose far child is
/// still pending; the bit's value equals that level's child size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraversalState {
    pub bit_string: u32,
    pub cur_start: u32,
    pub cur_size: u32,
    pub t_min: f32,
    pub t_max: f32,
}

impl TraversalState {
    /// State at the root node with the given crop interval.
    pub fn root(t_min: f32, t_max: f32) -> Self {
        Self {
            bit_string: 0,
            cur_start: 0,
            cur_size: ROOT_SIZE,
            t_min,
            t_max,
        }
    }

    /// Descends one level into the near child, recording the far child
    /// when both were hit.
    #[inline]
    pub fn go_down(&mut self, both_hit: bool, go_right: bool) {
        self.cur_size /= 2;
        if both_hit {
            self.bit_string ^= self.cur_size;
        }
        if go_right {
            self.cur_start ^= self.cur_size;
        }
    }

    /// Moves to the deepest pending far child. Requires `bit_string != 0`.
    #[inline]
    pub fn jump_up(&mut self) {
        debug_assert!(self.bit_string != 0, "jump_up on an empty bit string");
        self.cur_size = 1 << self.bit_string.trailing_zeros();
        self.cur_start ^= self.cur_size;
        self.bit_string ^= self.cur_size;
        self.cur_start &= !(self.cur_size - 1);
    }

    /// Parameter interval of the current node.
    pub fn interval(&self) -> (f32, f32) {
        get_interval(self.cur_start, self.cur_size)
    }
}
