use std::time::Instant;

use clexp::named::{named_group, named_table, table_names};
use clexp::ClassPartition;

fn aligned(name: &str) {
    let start = Instant::now();
    let table = named_table(name).unwrap();
    let g = named_group(name).unwrap();
    let p = ClassPartition::new(&g).unwrap();
    let assign = table.align(&p).unwrap();
    for (t, &c) in assign.iter().enumerate() {
        assert_eq!(table.classes[t].name, p.classes()[c].name, "{name}: class naming differs");
    }
    eprintln!("{name}: aligned in {:?}", start.elapsed());
}

#[test]
fn every_packaged_table_validates() {
    let names: Vec<_> = table_names().collect();
    assert_eq!(names.len(), 8);
    for n in names {
        named_table(n).unwrap();
    }
}

#[test]
fn small_tables_match_enumeration() {
    for name in ["Frob21", "Sym4", "Alt5", "PGammaL2_8"] {
        aligned(name);
    }
}

#[test]
fn triple_count_identity_small() {
    for name in ["Alt5", "Frob21"] {
        let table = named_table(name).unwrap();
        let p = ClassPartition::new(&named_group(name).unwrap()).unwrap();
        let assign = table.align(&p).unwrap();
        assert!(table.identity_check(&p, &assign).unwrap());
    }
}

#[test]
fn large_tables_match_enumeration() {
    for name in ["M11", "Sz8.3", "SL2_32.5", "J1"] {
        aligned(name);
    }
}
