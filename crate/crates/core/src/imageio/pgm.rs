//! 8-bit PGM, binary (`P5`) and ASCII (`P2`).

use super::RawImage8;
use crate::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal token preceded by optional whitespace and
    /// comments.
    fn number(&mut self, what: &str) -> Result<(u32, usize)> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(self.pos) {
                None => Error::MalformedHeader {
                    offset: start,
                    msg: format!("unexpected end of input, expected {what}"),
                },
                Some(&b) => Error::MalformedHeader {
                    offset: start,
                    msg: format!("expected {what}, found byte 0x{b:02x}"),
                },
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value = text.parse::<u32>().map_err(|_| Error::MalformedHeader {
            offset: start,
            msg: format!("{what} `{text}` out of range"),
        })?;
        Ok((value, start))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<RawImage8> {
    if bytes.len() < 2 {
        return Err(Error::MalformedHeader {
            offset: 0,
            msg: "missing magic number".into(),
        });
    }
    let binary = match &bytes[..2] {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(Error::UnsupportedFormat {
                offset: 0,
                magic: String::from_utf8_lossy(other).into_owned(),
            })
        }
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(Error::MalformedHeader {
            offset: 2,
            msg: "expected whitespace after magic number".into(),
        });
    }
    let (cols, cols_at) = cur.number("width")?;
    let (rows, rows_at) = cur.number("height")?;
    let (maxval, maxval_at) = cur.number("maxval")?;
    if cols == 0 {
        return Err(Error::MalformedHeader {
            offset: cols_at,
            msg: "width is zero".into(),
        });
    }
    if rows == 0 {
        return Err(Error::MalformedHeader {
            offset: rows_at,
            msg: "height is zero".into(),
        });
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::UnsupportedMaxval {
            offset: maxval_at,
            maxval,
        });
    }
    let count = rows as usize * cols as usize;
    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            Some(_) => {
                return Err(Error::MalformedHeader {
                    offset: cur.pos,
                    msg: "expected whitespace after maxval".into(),
                })
            }
            None => {
                return Err(Error::TruncatedData {
                    offset: cur.pos,
                    expected: count + 1,
                })
            }
        }
        let available = bytes.len() - cur.pos;
        if available < count {
            return Err(Error::TruncatedData {
                offset: bytes.len(),
                expected: count - available,
            });
        }
        bytes[cur.pos..cur.pos + count].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        for i in 0..count {
            cur.skip_space_and_comments();
            if cur.pos >= bytes.len() {
                return Err(Error::TruncatedData {
                    offset: cur.pos,
                    expected: count - i,
                });
            }
            let (v, at) = cur.number("pixel value")?;
            if v > maxval {
                return Err(Error::MalformedHeader {
                    offset: at,
                    msg: format!("pixel value {v} exceeds maxval {maxval}"),
                });
            }
            pixels.push(v as u8);
        }
        pixels
    };
    RawImage8::new(rows as usize, cols as usize, pixels)
}

/// Canonical binary encoding: `P5\n<cols> <rows>\n255\n` followed by the
/// raster.
pub fn write_pgm(img: &RawImage8) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.cols(), img.rows()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}
