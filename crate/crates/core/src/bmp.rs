//! Uncompressed 24-bit BMP images addressed as a 2D plane.
//!
//! Coordinates are `(x, y)` with `x` the column and `y` the row, origin at the
//! top-left pixel. Bottom-up files are flipped on load and flipped back on
//! save. Every byte outside the pixel array is kept as read, so an unmodified
//! image is written back byte for byte.

use thiserror::Error;

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BmpError {
    #[error("not a BMP file (missing \"BM\" signature)")]
    NotBmp,
    #[error("unsupported bit depth {0}, only 24 bits per pixel is handled")]
    UnsupportedDepth(u16),
    #[error("unsupported compression method {0}, only uncompressed images are handled")]
    UnsupportedCompression(u32),
    #[error("corrupt BMP file: {0}")]
    CorruptFile(String),
    #[error("pixel ({x}, {y}) is outside the {width}x{height} image")]
    OutOfBounds {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Pixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Pixel { r, g, b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    /// Row-major, top row first.
    pixels: Vec<Pixel>,
    /// Every byte before the pixel array.
    preserved_header: Vec<u8>,
    /// Bytes after the pixel array, if the file had any.
    trailer: Vec<u8>,
    top_down: bool,
}

/// Bytes per stored row, padded to a multiple of four.
pub fn row_stride(width: usize) -> usize {
    (width * 3).div_ceil(4) * 4
}

fn u16_at(b: &[u8], off: usize) -> u16 {
    u16::from_le_bytes([b[off], b[off + 1]])
}

fn u32_at(b: &[u8], off: usize) -> u32 {
    u32::from_le_bytes(b[off..off + 4].try_into().unwrap())
}

fn i32_at(b: &[u8], off: usize) -> i32 {
    i32::from_le_bytes(b[off..off + 4].try_into().unwrap())
}

fn corrupt(msg: impl Into<String>) -> BmpError {
    BmpError::CorruptFile(msg.into())
}

impl Image {
    /// A black image with a freshly generated BITMAPINFOHEADER.
    ///
    /// Panics if either dimension is zero or does not fit an `i32`.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be at least 1x1");
        let w = i32::try_from(width).expect("width fits i32");
        let h = i32::try_from(height).expect("height fits i32");
        let data_len = row_stride(width) * height;
        let file_len = (FILE_HEADER_LEN + INFO_HEADER_LEN + data_len) as u32;

        let mut hdr = Vec::with_capacity(FILE_HEADER_LEN + INFO_HEADER_LEN);
        hdr.extend_from_slice(b"BM");
        hdr.extend_from_slice(&file_len.to_le_bytes());
        hdr.extend_from_slice(&[0; 4]);
        hdr.extend_from_slice(&((FILE_HEADER_LEN + INFO_HEADER_LEN) as u32).to_le_bytes());
        hdr.extend_from_slice(&(INFO_HEADER_LEN as u32).to_le_bytes());
        hdr.extend_from_slice(&w.to_le_bytes());
        hdr.extend_from_slice(&h.to_le_bytes());
        hdr.extend_from_slice(&1u16.to_le_bytes());
        hdr.extend_from_slice(&24u16.to_le_bytes());
        hdr.extend_from_slice(&0u32.to_le_bytes());
        hdr.extend_from_slice(&(data_len as u32).to_le_bytes());
        // 2835 px/m ~ 72 dpi
        hdr.extend_from_slice(&2835i32.to_le_bytes());
        hdr.extend_from_slice(&2835i32.to_le_bytes());
        hdr.extend_from_slice(&0u32.to_le_bytes());
        hdr.extend_from_slice(&0u32.to_le_bytes());

        Image {
            width,
            height,
            pixels: vec![Pixel::default(); width * height],
            preserved_header: hdr,
            trailer: Vec::new(),
            top_down: false,
        }
    }

    /// Builds an image from top-down row-major pixels.
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Pixel>) -> Self {
        assert_eq!(pixels.len(), width * height, "pixel count must equal width * height");
        let mut img = Image::new(width, height);
        img.pixels = pixels;
        img
    }

    pub fn load(bytes: &[u8]) -> Result<Image, BmpError> {
        if bytes.len() < 2 || &bytes[..2] != b"BM" {
            return Err(BmpError::NotBmp);
        }
        if bytes.len() < FILE_HEADER_LEN + INFO_HEADER_LEN {
            return Err(corrupt(format!("only {} bytes, headers need 54", bytes.len())));
        }
        let data_offset = u32_at(bytes, 10) as usize;
        let info_len = u32_at(bytes, 14) as usize;
        if info_len < INFO_HEADER_LEN {
            return Err(corrupt(format!("info header of {info_len} bytes is too small")));
        }
        let raw_width = i32_at(bytes, 18);
        let raw_height = i32_at(bytes, 22);
        let depth = u16_at(bytes, 28);
        let compression = u32_at(bytes, 30);
        if depth != 24 {
            return Err(BmpError::UnsupportedDepth(depth));
        }
        if compression != 0 {
            return Err(BmpError::UnsupportedCompression(compression));
        }
        if raw_width <= 0 || raw_height == 0 || raw_height == i32::MIN {
            return Err(corrupt(format!("bad dimensions {raw_width}x{raw_height}")));
        }
        let width = raw_width as usize;
        let height = raw_height.unsigned_abs() as usize;
        let top_down = raw_height < 0;
        if data_offset < FILE_HEADER_LEN + info_len {
            return Err(corrupt(format!("pixel data offset {data_offset} overlaps the headers")));
        }
        let stride = row_stride(width);
        let data_len = stride
            .checked_mul(height)
            .ok_or_else(|| corrupt("pixel array size overflows"))?;
        let data_end = data_offset
            .checked_add(data_len)
            .filter(|&end| end <= bytes.len())
            .ok_or_else(|| {
                corrupt(format!(
                    "pixel array needs {data_len} bytes at offset {data_offset}, file has {}",
                    bytes.len()
                ))
            })?;

        let data = &bytes[data_offset..data_end];
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            let stored = if top_down { y } else { height - 1 - y };
            let row = &data[stored * stride..stored * stride + width * 3];
            pixels.extend(row.chunks_exact(3).map(|bgr| Pixel::new(bgr[2], bgr[1], bgr[0])));
        }

        Ok(Image {
            width,
            height,
            pixels,
            preserved_header: bytes[..data_offset].to_vec(),
            trailer: bytes[data_end..].to_vec(),
            top_down,
        })
    }

    pub fn save(&self) -> Vec<u8> {
        let stride = row_stride(self.width);
        let mut out = Vec::with_capacity(
            self.preserved_header.len() + stride * self.height + self.trailer.len(),
        );
        out.extend_from_slice(&self.preserved_header);
        let pad = stride - self.width * 3;
        for stored in 0..self.height {
            let y = if self.top_down { stored } else { self.height - 1 - stored };
            for p in self.row(y) {
                out.extend_from_slice(&[p.b, p.g, p.r]);
            }
            out.extend(std::iter::repeat_n(0u8, pad));
        }
        out.extend_from_slice(&self.trailer);
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[Pixel] {
        &self.pixels
    }

    pub fn preserved_header(&self) -> &[u8] {
        &self.preserved_header
    }

    fn row(&self, y: usize) -> &[Pixel] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    fn index(&self, x: usize, y: usize) -> Result<usize, BmpError> {
        if x < self.width && y < self.height {
            Ok(y * self.width + x)
        } else {
            Err(BmpError::OutOfBounds {
                x,
                y,
                width: self.width,
                height: self.height,
            })
        }
    }

    pub fn get_pixel(&self, x: usize, y: usize) -> Result<Pixel, BmpError> {
        self.index(x, y).map(|i| self.pixels[i])
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, p: Pixel) -> Result<(), BmpError> {
        let i = self.index(x, y)?;
        self.pixels[i] = p;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // 1x1 file assembled field by field: 14-byte file header, 40-byte
    // BITMAPINFOHEADER, one BGR pixel plus one pad byte = 58 bytes.
    fn one_by_one() -> Vec<u8> {
        let mut f = vec![
            b'B', b'M', 58, 0, 0, 0, 0, 0, 0, 0, 54, 0, 0, 0, // file header
            40, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 24, 0, // size, w, h, planes, bpp
            0, 0, 0, 0, 4, 0, 0, 0, 0x13, 0x0B, 0, 0, 0x13, 0x0B, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        ];
        f.extend_from_slice(&[0x30, 0x20, 0x10, 0x00]);
        f
    }

    fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> Image {
        let px = (0..w * h)
            .map(|_| Pixel::new(rng.random(), rng.random(), rng.random()))
            .collect();
        Image::from_pixels(w, h, px)
    }

    #[test]
    fn loads_hand_built_1x1() {
        let bytes = one_by_one();
        assert_eq!(bytes.len(), 58);
        let img = Image::load(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(img.get_pixel(0, 0).unwrap(), Pixel::new(0x10, 0x20, 0x30));
        assert_eq!(img.save(), bytes);
    }

    #[test]
    fn generated_header_matches_hand_built() {
        let img = Image::from_pixels(1, 1, vec![Pixel::new(0x10, 0x20, 0x30)]);
        assert_eq!(img.save(), one_by_one());
    }

    #[test]
    fn rejects_bad_magic_and_depth() {
        let mut b = one_by_one();
        b[0] = b'P';
        assert_eq!(Image::load(&b), Err(BmpError::NotBmp));
        assert_eq!(Image::load(b"GIF89a"), Err(BmpError::NotBmp));

        let mut gray = one_by_one();
        gray[28] = 8;
        assert_eq!(Image::load(&gray), Err(BmpError::UnsupportedDepth(8)));

        let mut rle = one_by_one();
        rle[30] = 1;
        assert_eq!(Image::load(&rle), Err(BmpError::UnsupportedCompression(1)));
    }

    #[test]
    fn rejects_inconsistent_sizes() {
        let b = one_by_one();
        assert!(matches!(Image::load(&b[..56]), Err(BmpError::CorruptFile(_))));
        assert!(matches!(Image::load(&b[..20]), Err(BmpError::CorruptFile(_))));

        let mut zero_w = one_by_one();
        zero_w[18] = 0;
        assert!(matches!(Image::load(&zero_w), Err(BmpError::CorruptFile(_))));

        let mut bad_off = one_by_one();
        bad_off[10] = 20;
        assert!(matches!(Image::load(&bad_off), Err(BmpError::CorruptFile(_))));
    }

    #[test]
    fn out_of_bounds_access() {
        let mut img = Image::new(3, 2);
        assert!(matches!(img.get_pixel(3, 0), Err(BmpError::OutOfBounds { .. })));
        assert!(matches!(img.get_pixel(0, 2), Err(BmpError::OutOfBounds { .. })));
        assert!(img.set_pixel(3, 1, Pixel::default()).is_err());
    }

    #[test]
    fn set_then_get_touches_one_pixel() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let orig = random_image(&mut rng, 5, 4);
        let mut img = orig.clone();
        img.set_pixel(2, 3, Pixel::new(1, 2, 3)).unwrap();
        assert_eq!(img.get_pixel(2, 3).unwrap(), Pixel::new(1, 2, 3));
        let diffs = orig.pixels().iter().zip(img.pixels()).filter(|(a, b)| a != b).count();
        assert_eq!(diffs, 1);
    }

    #[test]
    fn rewriting_same_value_is_byte_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut img = random_image(&mut rng, 7, 3);
        let before = img.save();
        let p = img.get_pixel(4, 1).unwrap();
        img.set_pixel(4, 1, p).unwrap();
        assert_eq!(img.save(), before);
    }

    #[test]
    fn rows_are_padded_to_four_bytes() {
        assert_eq!(row_stride(3), 12);
        assert_eq!(row_stride(1), 4);
        assert_eq!(row_stride(4), 12);
        let bytes = Image::new(3, 1).save();
        assert_eq!(bytes.len(), 54 + 12);
    }

    #[test]
    fn bottom_up_rows_map_to_top_left_origin() {
        let mut img = Image::new(2, 2);
        img.set_pixel(0, 0, Pixel::new(9, 9, 9)).unwrap();
        let bytes = img.save();
        // top row is stored last in a bottom-up file
        let stride = row_stride(2);
        assert_eq!(&bytes[54 + stride..54 + stride + 3], &[9, 9, 9]);
        assert_eq!(&bytes[54..57], &[0, 0, 0]);
    }

    #[test]
    fn top_down_files_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let img = random_image(&mut rng, 3, 2);
        let mut bytes = img.save();
        bytes[22..26].copy_from_slice(&(-2i32).to_le_bytes());
        // swap the two stored rows so the logical image is unchanged
        let stride = row_stride(3);
        let (a, b) = bytes[54..54 + 2 * stride].split_at_mut(stride);
        a.swap_with_slice(b);
        let loaded = Image::load(&bytes).unwrap();
        assert_eq!(loaded.pixels(), img.pixels());
        assert_eq!(loaded.save(), bytes);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (w, h) in [(16, 16), (2, 2), (1, 7), (13, 5)] {
            let img = random_image(&mut rng, w, h);
            let bytes = img.save();
            let back = Image::load(&bytes).unwrap();
            assert_eq!(back, img);
            for y in 0..h {
                for x in 0..w {
                    assert_eq!(back.get_pixel(x, y), img.get_pixel(x, y));
                }
            }
            assert_eq!(back.save(), bytes);
            assert_eq!(back.pixel_count(), w * h);
        }
    }

    #[test]
    fn extra_header_and_trailer_bytes_survive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let img = random_image(&mut rng, 2, 2);
        let plain = img.save();
        // insert a 4-byte gap before pixel data and append a trailer
        let mut bytes = plain[..54].to_vec();
        bytes[10] = 58;
        bytes.extend_from_slice(&[0xDE, 0xAD, 0xBE, 0xEF]);
        bytes.extend_from_slice(&plain[54..]);
        bytes.extend_from_slice(b"tail");
        let loaded = Image::load(&bytes).unwrap();
        assert_eq!(loaded.pixels(), img.pixels());
        assert_eq!(loaded.save(), bytes);
    }
}
