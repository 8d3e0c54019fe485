//! Text serialization of keys and ciphertexts.
//!
//! Key files are line-oriented and canonical: writing, parsing, and writing
//! again reproduces the bytes exactly.
//!
//! ```text
//! SUZUKI-MST3 PUBLIC v1        (or PRIVATE)
//! n=7
//! l=4
//! poly=83                       hex of the reduction polynomial
//! pi=3,1,2,4                    1-based images: R'_i = R_(pi_i)
//! type[1]=4,4,8                 one line per coordinate
//! ...
//! alpha[1]                      public: alpha[k] then gamma[k] sections
//! type=4,4,8                    private: beta[k] sections, then tchain
//! S(0f,3a,51,70)                cover rows as group elements; signature
//! ...                           rows as bare field-element hex
//! --                            separates blocks within a section
//! ```
//!
//! The `tchain` section holds the masking chain, one group element per line.
//! A ciphertext file is three lines: `y1=S(...)`, `y2=S(...)`, `y3=S(...)`.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{GroupElement, GroupParams};
use crate::logsig::{Cover, LogSignature, SignatureType};
use crate::mst3::{Ciphertext, PrivateKey, PublicKey, SchemeParams};

const PUBLIC_HEADER: &str = "SUZUKI-MST3 PUBLIC v1";
const PRIVATE_HEADER: &str = "SUZUKI-MST3 PRIVATE v1";

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn radices_line(ty: &SignatureType) -> String {
    join(ty.radices().iter().copied())
}

fn write_common_header(out: &mut String, header: &str, params: &SchemeParams, pi: &[u32]) {
    let spec = params.group().field();
    out.push_str(header);
    out.push('\n');
    out.push_str(&format!("n={}\n", spec.degree()));
    out.push_str(&format!("l={}\n", params.l()));
    out.push_str(&format!("poly={:x}\n", spec.modulus()));
    out.push_str(&format!("pi={}\n", join(pi.iter().copied())));
    for (k, ty) in params.types().iter().enumerate() {
        out.push_str(&format!("type[{}]={}\n", k + 1, radices_line(ty)));
    }
}

fn write_cover_section(out: &mut String, name: &str, k: u32, cover: &Cover) {
    out.push_str(&format!("{name}[{k}]\n"));
    out.push_str(&format!("type={}\n", radices_line(cover.signature_type())));
    for (i, block) in cover.blocks().iter().enumerate() {
        if i > 0 {
            out.push_str("--\n");
        }
        for row in block {
            out.push_str(&row.to_text());
            out.push('\n');
        }
    }
}

fn write_signature_section(out: &mut String, k: u32, sig: &LogSignature) {
    out.push_str(&format!("beta[{k}]\n"));
    out.push_str(&format!("type={}\n", radices_line(sig.signature_type())));
    for (i, block) in sig.blocks().iter().enumerate() {
        if i > 0 {
            out.push_str("--\n");
        }
        for row in block {
            out.push_str(&row.to_hex());
            out.push('\n');
        }
    }
}

/// Renders a public key file.
pub fn write_public_key(pk: &PublicKey) -> String {
    let mut out = String::new();
    write_common_header(&mut out, PUBLIC_HEADER, pk.params(), pk.pi());
    for k in 1..=pk.params().l() {
        write_cover_section(&mut out, "alpha", k, pk.alpha(k));
    }
    for k in 1..=pk.params().l() {
        write_cover_section(&mut out, "gamma", k, pk.gamma(k));
    }
    out
}

/// Renders a private key file.
pub fn write_private_key(sk: &PrivateKey) -> String {
    let mut out = String::new();
    write_common_header(&mut out, PRIVATE_HEADER, sk.params(), sk.pi());
    for k in 1..=sk.params().l() {
        write_signature_section(&mut out, k, sk.beta(k));
    }
    out.push_str("tchain\n");
    for t in sk.chain() {
        out.push_str(&t.to_text());
        out.push('\n');
    }
    out
}

/// Renders a ciphertext file.
pub fn write_ciphertext(ct: &Ciphertext) -> String {
    format!(
        "y1={}\ny2={}\ny3={}\n",
        ct.y1.to_text(),
        ct.y2.to_text(),
        ct.y3.to_text()
    )
}

/// Sequential reader tracking 1-based line numbers for error reporting.
struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn line_no(&self) -> usize {
        self.pos
    }

    fn next(&mut self) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::parse(self.pos + 1, "unexpected end of file"))?;
        self.pos += 1;
        Ok(line)
    }

    fn expect_literal(&mut self, want: &str) -> Result<()> {
        let line = self.next()?;
        if line != want {
            return Err(Error::parse(
                self.line_no(),
                format!("expected {want:?}, found {line:?}"),
            ));
        }
        Ok(())
    }

    fn expect_key(&mut self, key: &str) -> Result<&'a str> {
        let line = self.next()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| {
                Error::parse(
                    self.line_no(),
                    format!("expected {key}=..., found {line:?}"),
                )
            })
    }

    fn expect_eof(&self) -> Result<()> {
        if self.pos != self.lines.len() {
            return Err(Error::parse(
                self.pos + 1,
                format!("trailing content {:?}", self.lines[self.pos]),
            ));
        }
        Ok(())
    }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => other,
    }
}

fn parse_number<T: std::str::FromStr>(cur: &Cursor, what: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(cur.line_no(), format!("invalid {what}: {s:?}")))
}

fn parse_csv<T: std::str::FromStr>(cur: &Cursor, what: &str, s: &str) -> Result<Vec<T>> {
    s.split(',').map(|p| parse_number(cur, what, p)).collect()
}

/// Header fields shared by both key files.
struct CommonHeader {
    params: SchemeParams,
    pi: Vec<u32>,
}

fn parse_common_header(cur: &mut Cursor, header: &str) -> Result<CommonHeader> {
    cur.expect_literal(header)?;
    let n_text = cur.expect_key("n")?;
    let n: u32 = parse_number(cur, "degree", n_text)?;
    let l_text = cur.expect_key("l")?;
    let l: u32 = parse_number(cur, "coordinate count", l_text)?;
    let poly_text = cur.expect_key("poly")?;
    let poly = u64::from_str_radix(poly_text, 16)
        .map_err(|_| Error::parse(cur.line_no(), format!("invalid polynomial {poly_text:?}")))?;
    let spec = FieldSpec::new(n, poly).map_err(|e| at_line(cur.line_no(), e))?;
    let group = GroupParams::new(spec, l).map_err(|e| at_line(cur.line_no(), e))?;

    let pi_text = cur.expect_key("pi")?;
    let pi: Vec<u32> = parse_csv(cur, "permutation entry", pi_text)?;

    let mut types = Vec::with_capacity(l as usize);
    for k in 1..=l {
        let type_text = cur.expect_key(&format!("type[{k}]"))?;
        let radices: Vec<u64> = parse_csv(cur, "radix", type_text)?;
        let ty = SignatureType::from_radices(&radices).map_err(|e| at_line(cur.line_no(), e))?;
        if !ty.matches_field(spec) {
            return Err(Error::parse(
                cur.line_no(),
                format!("type[{k}] does not partition {n} bits"),
            ));
        }
        types.push(ty);
    }
    let params = SchemeParams::new(group, types).map_err(|e| at_line(cur.line_no(), e))?;
    Ok(CommonHeader { params, pi })
}

fn parse_section_type(cur: &mut Cursor, want: &SignatureType) -> Result<()> {
    let type_text = cur.expect_key("type")?;
    let line_radices: Vec<u64> = parse_csv(cur, "radix", type_text)?;
    if line_radices != want.radices() {
        return Err(Error::parse(
            cur.line_no(),
            format!(
                "section type {:?} disagrees with declared type {:?}",
                line_radices,
                want.radices()
            ),
        ));
    }
    Ok(())
}

fn parse_cover_section(
    cur: &mut Cursor,
    name: &str,
    k: u32,
    group: GroupParams,
    ty: &SignatureType,
) -> Result<Cover> {
    cur.expect_literal(&format!("{name}[{k}]"))?;
    parse_section_type(cur, ty)?;
    let mut blocks = Vec::with_capacity(ty.block_count());
    for (i, &r) in ty.radices().iter().enumerate() {
        if i > 0 {
            cur.expect_literal("--")?;
        }
        let rows = (0..r)
            .map(|_| {
                let line = cur.next()?;
                group
                    .parse_element(line)
                    .map_err(|e| at_line(cur.line_no(), e))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(rows);
    }
    Cover::from_blocks(group, ty.clone(), blocks)
}

fn parse_signature_section(
    cur: &mut Cursor,
    k: u32,
    spec: FieldSpec,
    ty: &SignatureType,
) -> Result<LogSignature> {
    cur.expect_literal(&format!("beta[{k}]"))?;
    parse_section_type(cur, ty)?;
    let mut blocks = Vec::with_capacity(ty.block_count());
    for (i, &r) in ty.radices().iter().enumerate() {
        if i > 0 {
            cur.expect_literal("--")?;
        }
        let rows = (0..r)
            .map(|_| {
                let line = cur.next()?;
                spec.parse_element(line)
                    .map_err(|e| at_line(cur.line_no(), e))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(rows);
    }
    LogSignature::from_blocks(spec, ty.clone(), k, blocks)
}

/// Parses a public key file.
pub fn parse_public_key(text: &str) -> Result<PublicKey> {
    let mut cur = Cursor::new(text);
    let CommonHeader { params, pi } = parse_common_header(&mut cur, PUBLIC_HEADER)?;
    let group = params.group();
    let alpha = (1..=params.l())
        .map(|k| {
            parse_cover_section(&mut cur, "alpha", k, group, &params.types()[(k - 1) as usize])
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma = (1..=params.l())
        .map(|k| {
            parse_cover_section(&mut cur, "gamma", k, group, &params.types()[(k - 1) as usize])
        })
        .collect::<Result<Vec<_>>>()?;
    cur.expect_eof()?;
    PublicKey::from_parts(params, alpha, gamma, pi)
}

/// Parses a private key file.
pub fn parse_private_key(text: &str) -> Result<PrivateKey> {
    let mut cur = Cursor::new(text);
    let CommonHeader { params, pi } = parse_common_header(&mut cur, PRIVATE_HEADER)?;
    let spec = params.group().field();
    let beta = (1..=params.l())
        .map(|k| parse_signature_section(&mut cur, k, spec, &params.types()[(k - 1) as usize]))
        .collect::<Result<Vec<_>>>()?;
    cur.expect_literal("tchain")?;
    let chain = (0..params.chain_len())
        .map(|_| {
            let line = cur.next()?;
            params
                .group()
                .parse_element(line)
                .map_err(|e| at_line(cur.line_no(), e))
        })
        .collect::<Result<Vec<_>>>()?;
    cur.expect_eof()?;
    PrivateKey::from_parts(params, beta, chain, pi)
}

/// Parses a ciphertext file against known group parameters.
pub fn parse_ciphertext(group: GroupParams, text: &str) -> Result<Ciphertext> {
    let mut cur = Cursor::new(text);
    let mut component = |key: &str| -> Result<GroupElement> {
        let value = cur.expect_key(key)?;
        group
            .parse_element(value)
            .map_err(|e| at_line(cur.line_no(), e))
    };
    let y1 = component("y1")?;
    let y2 = component("y2")?;
    let y3 = component("y3")?;
    cur.expect_eof()?;
    Ok(Ciphertext { y1, y2, y3 })
}
