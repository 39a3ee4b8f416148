//! Dense word-backed bit sets.
//!
//! Everything the sumset engine does reduces to OR-ing one bit set into
//! another at an offset, either linearly (integer window) or cyclically
//! (residues mod m). Bits above `width` are kept zero at all times so that
//! equality and popcount can work on whole words.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    width: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(width: usize) -> Self {
        Bits {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.width);
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn or_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (dst, src) in self.words.iter_mut().zip(&other.words) {
            *dst |= src;
        }
    }

    /// Ascending positions of set bits.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            std::iter::successors(Some(w), |&w| Some(w & (w - 1)))
                .take_while(|&w| w != 0)
                .map(move |w| i * WORD + w.trailing_zeros() as usize)
        })
    }

    pub fn highest_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Read `n <= 64` bits starting at `pos`. Bits past the allocation read as 0.
    fn load(&self, pos: usize, n: usize) -> u64 {
        let w = pos / WORD;
        let b = pos % WORD;
        let mut x = self.words[w] >> b;
        if b != 0 && w + 1 < self.words.len() {
            x |= self.words[w + 1] << (WORD - b);
        }
        if n < WORD {
            x &= (1u64 << n) - 1;
        }
        x
    }

    /// OR `n <= 64` bits (`val`, low-aligned) into `self` starting at `pos`.
    fn store_or(&mut self, pos: usize, n: usize, val: u64) {
        debug_assert!(pos + n <= self.width);
        let w = pos / WORD;
        let b = pos % WORD;
        self.words[w] |= val << b;
        if b != 0 && b + n > WORD {
            self.words[w + 1] |= val >> (WORD - b);
        }
    }

    /// OR `len` bits of `src` starting at `src_start` into `self` at `dst_start`.
    pub fn or_bit_range(&mut self, src: &Bits, src_start: usize, len: usize, dst_start: usize) {
        debug_assert!(src_start + len <= src.width);
        debug_assert!(dst_start + len <= self.width);
        let mut done = 0;
        while done < len {
            let n = (len - done).min(WORD);
            let chunk = src.load(src_start + done, n);
            self.store_or(dst_start + done, n, chunk);
            done += n;
        }
    }

    /// OR `src << shift` into `self`. Set bits of `src` must stay below
    /// `self.width` after shifting.
    pub fn or_shifted(&mut self, src: &Bits, shift: usize) {
        debug_assert!(src
            .highest_one()
            .is_none_or(|h| h + shift < self.width));
        let len = src.width.min(self.width - shift);
        self.or_bit_range(src, 0, len, shift);
    }

    /// OR a cyclic left rotation of `src` by `shift` into `self`.
    /// Both sets must have the same width.
    pub fn or_rotated(&mut self, src: &Bits, shift: usize) {
        debug_assert_eq!(self.width, src.width);
        let m = self.width;
        let s = shift % m;
        if s == 0 {
            self.or_assign(src);
            return;
        }
        self.or_bit_range(src, 0, m - s, s);
        self.or_bit_range(src, m - s, s, 0);
    }
}
