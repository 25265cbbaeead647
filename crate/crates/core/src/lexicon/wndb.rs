//! WNDB (`data.*` / `index.*`) line parsers.

use std::fs;
use std::path::Path;

use super::{normalize_lemma, Lexicon, Pos, Synset, SynsetId};
use crate::{Error, Result};

fn read_lines(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    // WNDB files are ASCII in practice, but a few glosses in derived
    // distributions carry Latin-1 bytes.
    Ok(match String::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => e.into_bytes().iter().map(|&b| b as char).collect(),
    })
}

/// Data and index files open with a license block whose lines start with two
/// spaces.
fn is_header(line: &str) -> bool {
    line.starts_with("  ")
}

pub(super) fn parse_data_file(path: &Path) -> Result<Vec<Synset>> {
    let text = read_lines(path)?;
    let mut synsets = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || is_header(line) {
            continue;
        }
        let synset = parse_data_line(line).map_err(|msg| Error::parse(path, n + 1, msg))?;
        synsets.push(synset);
    }
    Ok(synsets)
}

fn strip_syntactic_marker(word: &str) -> &str {
    // Adjectives may carry (a), (p) or (ip) position markers.
    match word.rfind('(') {
        Some(i) if word.ends_with(')') && i > 0 => &word[..i],
        _ => word,
    }
}

fn parse_offset(field: &str) -> std::result::Result<u32, String> {
    if field.len() != 8 || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad synset offset {field:?}"));
    }
    field.parse().map_err(|_| format!("bad synset offset {field:?}"))
}

pub(super) fn parse_data_line(line: &str) -> std::result::Result<Synset, String> {
    let (head, gloss) = match line.find(" | ") {
        Some(i) => (&line[..i], line[i + 3..].trim_end()),
        None => (line.trim_end_matches(['|', ' ']), ""),
    };
    let mut fields = head.split_ascii_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| format!("missing {what}"));

    let offset = parse_offset(next("synset offset")?)?;
    let lex_filenum = next("lexicographer file number")?;
    if lex_filenum.parse::<u8>().is_err() {
        return Err(format!("bad lexicographer file number {lex_filenum:?}"));
    }
    let ss_type = next("synset type")?;
    let pos = Pos::from_tag(ss_type).ok_or_else(|| format!("bad synset type {ss_type:?}"))?;
    let id = SynsetId::new(pos, offset);

    let w_cnt = next("word count")?;
    let w_cnt = usize::from_str_radix(w_cnt, 16).map_err(|_| format!("bad word count {w_cnt:?}"))?;
    if w_cnt == 0 {
        return Err("synset has no words".into());
    }
    let mut lemmas: Vec<String> = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        let lex_id = next("lex id")?;
        if u8::from_str_radix(lex_id, 16).is_err() {
            return Err(format!("bad lex id {lex_id:?}"));
        }
        let lemma = normalize_lemma(strip_syntactic_marker(word));
        if !lemmas.contains(&lemma) {
            lemmas.push(lemma);
        }
    }

    let p_cnt = next("pointer count")?;
    let p_cnt: usize = p_cnt
        .parse()
        .map_err(|_| format!("bad pointer count {p_cnt:?}"))?;
    let mut hypernym_ids = Vec::new();
    let mut hyponym_ids = Vec::new();
    for _ in 0..p_cnt {
        let symbol = next("pointer symbol")?;
        let target = parse_offset(next("pointer offset")?)?;
        let target_pos = next("pointer part of speech")?;
        let target_pos =
            Pos::from_tag(target_pos).ok_or_else(|| format!("bad pointer pos {target_pos:?}"))?;
        let source_target = next("pointer source/target")?;
        if source_target.len() != 4 || u16::from_str_radix(source_target, 16).is_err() {
            return Err(format!("bad pointer source/target {source_target:?}"));
        }
        let target = SynsetId::new(target_pos, target);
        let list = match symbol {
            "@" | "@i" => &mut hypernym_ids,
            "~" | "~i" => &mut hyponym_ids,
            _ => continue,
        };
        if !list.contains(&target) {
            list.push(target);
        }
    }

    // Verb synsets end with frame lists: f_cnt followed by `+ f_num w_num`.
    let rest: Vec<&str> = fields.collect();
    if !rest.is_empty() {
        let frames_ok = pos == Pos::Verb
            && rest[0].parse::<usize>().is_ok_and(|f| rest.len() == 1 + 3 * f)
            && rest[1..].chunks(3).all(|c| c[0] == "+");
        if !frames_ok {
            return Err(format!("unexpected trailing fields {:?}", rest.join(" ")));
        }
    }

    Ok(Synset {
        id,
        lemmas,
        gloss: gloss.to_string(),
        hypernym_ids,
        hyponym_ids,
    })
}

/// Verifies that every index entry names synsets that exist and contain the
/// entry's lemma.
pub(super) fn check_index_file(path: &Path, lexicon: &Lexicon) -> Result<()> {
    let text = read_lines(path)?;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || is_header(line) {
            continue;
        }
        let parsed = parse_index_line(line).map_err(|msg| Error::parse(path, n + 1, msg))?;
        for id in parsed.synsets {
            let synset = lexicon.synset(id).ok_or_else(|| Error::DanglingPointer {
                synset: format!("index entry {:?} ({})", parsed.lemma, id.pos.tag()),
                target: id.to_string(),
            })?;
            if !synset.lemmas.contains(&parsed.lemma) {
                return Err(Error::parse(
                    path,
                    n + 1,
                    format!("synset {id} does not contain lemma {:?}", parsed.lemma),
                ));
            }
        }
    }
    Ok(())
}

struct IndexEntry {
    lemma: String,
    synsets: Vec<SynsetId>,
}

fn parse_index_line(line: &str) -> std::result::Result<IndexEntry, String> {
    let mut fields = line.split_ascii_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| format!("missing {what}"));
    let lemma = normalize_lemma(next("lemma")?);
    let pos = next("part of speech")?;
    let pos = Pos::from_tag(pos).ok_or_else(|| format!("bad part of speech {pos:?}"))?;
    let count = |s: &str, what: &str| s.parse::<usize>().map_err(|_| format!("bad {what} {s:?}"));
    let synset_cnt = count(next("synset count")?, "synset count")?;
    let p_cnt = count(next("pointer count")?, "pointer count")?;
    for _ in 0..p_cnt {
        next("pointer symbol")?;
    }
    count(next("sense count")?, "sense count")?;
    count(next("tagged sense count")?, "tagged sense count")?;
    let mut synsets = Vec::with_capacity(synset_cnt);
    for _ in 0..synset_cnt {
        synsets.push(SynsetId::new(pos, parse_offset(next("synset offset")?)?));
    }
    if let Some(extra) = fields.next() {
        return Err(format!("unexpected trailing field {extra:?}"));
    }
    Ok(IndexEntry { lemma, synsets })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOG: &str = "02084071 05 n 03 dog 0 domestic_dog 0 Canis_familiaris 0 004 @ 02083346 n 0000 #m 02083863 n 0000 ~ 01322604 n 0000 @i 02083000 n 0000 | a member of the genus Canis; \"the dog barked all night\"  ";

    #[test]
    fn parses_noun_line() {
        let s = parse_data_line(DOG).unwrap();
        assert_eq!(s.id.to_string(), "02084071-n");
        assert_eq!(s.lemmas, ["dog", "domestic_dog", "canis_familiaris"]);
        assert_eq!(s.hypernym_ids.len(), 2);
        assert_eq!(s.hyponym_ids.len(), 1);
        assert!(s.gloss.starts_with("a member of the genus Canis"));
        assert!(s.gloss.ends_with("night\""));
    }

    #[test]
    fn parses_verb_frames_and_adjective_markers() {
        let verb = "01835496 38 v 01 travel 0 001 @ 01831531 v 0000 02 + 01 00 + 02 00 | change location";
        assert_eq!(parse_data_line(verb).unwrap().lemmas, ["travel"]);
        let adj = "00013160 00 s 02 full-length(a) 0 long(p) 1 000 | complete";
        let s = parse_data_line(adj).unwrap();
        assert_eq!(s.id.pos, Pos::Adjective);
        assert_eq!(s.lemmas, ["full-length", "long"]);
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in [
            "0208407 05 n 01 dog 0 000 | x",
            "02084071 05 q 01 dog 0 000 | x",
            "02084071 05 n 01 dog 0 001 @ 02083346 n | x",
            "02084071 05 n 01 dog 0 000 extra | x",
            "02084071 05 n 00 000 | x",
        ] {
            assert!(parse_data_line(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn index_line_lists_offsets() {
        let e = parse_index_line("dog n 2 2 @ ~ 2 1 02084071 10114209  ").unwrap();
        assert_eq!(e.lemma, "dog");
        assert_eq!(e.synsets.len(), 2);
        assert!(parse_index_line("dog n 3 0 3 1 02084071").is_err());
    }
}
