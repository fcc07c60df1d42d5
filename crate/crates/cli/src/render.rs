//! JSON, CSV and Markdown renderings.

use fcspherical::affine::AffineRootRecord;
use fcspherical::atlas::{FcRecord, IdealRecord};
use fcspherical::chevalley::StructureConstant;
use fcspherical::report::Report;
use fcspherical::roots::{format_coords, RootSystemDocument};
use serde::Serialize;

use crate::inspect::Inspection;
use crate::Format;

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn md_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), " --- |".repeat(header.len()));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
        s.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    s
}

fn table(format: Format, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Csv => csv_text(header, rows),
        _ => md_table(header, rows),
    }
}

fn root(c: &[i32]) -> String {
    format_coords(c)
}

fn roots(list: &[Vec<i32>]) -> String {
    list.iter().map(|c| root(c)).collect::<Vec<_>>().join(" ")
}

fn affine(r: &AffineRootRecord) -> String {
    let d = match r.level {
        0 => String::new(),
        1 => "d".to_string(),
        l => format!("{l}d"),
    };
    let f = root(&r.coords);
    if d.is_empty() || f.starts_with('-') {
        format!("{d}{f}")
    } else {
        format!("{d}+{f}")
    }
}

fn word(w: &[u8]) -> String {
    w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn report(r: &Report, format: Format) -> String {
    if format == Format::Json {
        let mut s = r.to_json();
        s.push('\n');
        return s;
    }
    let mut rows = vec![
        vec!["meta".into(), "type".into(), r.cartan_type.to_string()],
        vec!["meta".into(), "check".into(), r.check.clone()],
        vec!["meta".into(), "subject_count".into(), r.subject_count.to_string()],
    ];
    rows.extend(r.counts.iter().map(|(k, v)| vec!["count".into(), k.clone(), v.to_string()]));
    rows.extend(r.mismatches.iter().map(|m| vec!["mismatch".into(), m.subject.clone(), m.detail.clone()]));
    rows.extend(
        r.witnesses
            .iter()
            .map(|w| vec!["witness".into(), w.subject.clone(), w.note.clone()]),
    );
    match format {
        Format::Csv => csv_text(&["section", "key", "value"], rows),
        _ => format!(
            "# {} {}\n\n{}",
            r.check,
            r.cartan_type,
            md_table(&["section", "key", "value"], rows)
        ),
    }
}

pub fn ideal_atlas(records: &[IdealRecord], format: Format) -> String {
    if format == Format::Json {
        return json(records);
    }
    let rows = records
        .iter()
        .map(|r| {
            vec![
                roots(&r.generators),
                roots(&r.members),
                r.layers.iter().map(|l| roots(l)).collect::<Vec<_>>().join(" / "),
                r.psi_hat.iter().map(affine).collect::<Vec<_>>().join(" "),
                word(&r.w_word),
                r.abelian.to_string(),
                r.spherical.to_string(),
                r.fc.to_string(),
            ]
        })
        .collect();
    table(
        format,
        &["generators", "members", "layers", "psi_hat", "w_word", "abelian", "spherical", "fc"],
        rows,
    )
}

pub fn fc_atlas(records: &[FcRecord], format: Format) -> String {
    if format == Format::Json {
        return json(records);
    }
    let rows = records
        .iter()
        .map(|r| {
            vec![
                word(&r.word),
                r.length.to_string(),
                roots(&r.inversions),
                r.commutative.to_string(),
                r.spherical.to_string(),
            ]
        })
        .collect();
    table(format, &["word", "length", "inversions", "commutative", "spherical"], rows)
}

pub fn constants(sc: &[StructureConstant], format: Format) -> String {
    if format == Format::Json {
        return json(sc);
    }
    let rows = sc
        .iter()
        .map(|c| vec![root(&c.alpha), root(&c.beta), c.n.to_string()])
        .collect();
    table(format, &["alpha", "beta", "n"], rows)
}

pub fn system(doc: &RootSystemDocument, format: Format) -> String {
    if format == Format::Json {
        return json(doc);
    }
    let rows = doc
        .positive_roots
        .iter()
        .map(|c| {
            let h: i32 = c.iter().sum();
            let mark = if *c == doc.theta {
                "highest"
            } else if *c == doc.theta_s {
                "highest short"
            } else {
                ""
            };
            vec![root(c), h.to_string(), mark.to_string()]
        })
        .collect();
    table(format, &["root", "height", "note"], rows)
}

pub fn inspection(doc: &Inspection, format: Format) -> String {
    if format == Format::Json {
        return json(doc);
    }
    let opt = |b: Option<bool>| b.map_or("cap exceeded".to_string(), |b| b.to_string());
    let mut rows = vec![
        vec!["type".to_string(), doc.cartan_type.to_string()],
        vec!["kind".into(), format!("{:?}", doc.kind).to_lowercase()],
        vec!["roots".into(), roots(&doc.roots)],
        vec![
            "negative_pairings".into(),
            doc.negative_pairings
                .iter()
                .map(|p| format!("<{}, {}> = {}", root(&p.alpha), root(&p.beta), p.value))
                .collect::<Vec<_>>()
                .join("; "),
        ],
        vec!["fc".into(), doc.fc.to_string()],
        vec!["commutative".into(), doc.commutative.to_string()],
    ];
    if let Some(w) = &doc.word {
        rows.insert(2, vec!["word".into(), word(w)]);
        rows.push(vec!["fc_words".into(), opt(doc.fc_words)]);
        rows.push(vec!["commutative_words".into(), opt(doc.commutative_words)]);
    }
    if let Some(i) = &doc.ideal {
        rows.push(vec!["generators".into(), roots(&i.generators)]);
        rows.push(vec![
            "layers".into(),
            i.layers.iter().map(|l| roots(l)).collect::<Vec<_>>().join(" / "),
        ]);
        rows.push(vec!["psi_hat".into(), i.psi_hat.iter().map(affine).collect::<Vec<_>>().join(" ")]);
        rows.push(vec!["w_word".into(), word(&i.w_word)]);
        rows.push(vec!["abelian".into(), i.abelian.to_string()]);
    }
    rows.push(vec!["pairing_ok".into(), doc.report.pairing_ok.to_string()]);
    rows.push(vec!["spherical".into(), doc.report.spherical.to_string()]);
    if let Some(w) = &doc.report.witness {
        rows.push(vec!["witness".into(), roots(w)]);
    }
    rows.push(vec!["height".into(), doc.height.to_string()]);
    rows.push(vec![
        "fingerprint".into(),
        format!(
            "orbit dimension {}, height {}, ranks {:?}",
            doc.fingerprint.orbit_dimension, doc.fingerprint.height, doc.fingerprint.ranks
        ),
    ]);
    table(format, &["field", "value"], rows)
}
