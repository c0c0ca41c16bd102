use bdcover::covers::{generate_table, TableFamily};

fn main() {
    for f in ["sl", "spin-odd", "sp", "spin-even", "e"] {
        let fam = TableFamily::parse(f).unwrap();
        let t = generate_table(&fam.groups(None), &[1, 2, 3, 4, 5, 6]).unwrap();
        print!("{}", t.to_csv());
    }
}
