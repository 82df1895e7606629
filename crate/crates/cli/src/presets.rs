//! Relations and printed values of the reference tables.

/// A blank in the printed table is `None`.
pub struct Preset {
    pub name: &'static str,
    pub caption: &'static str,
    pub n: usize,
    pub relation: &'static str,
    pub max_degree: usize,
    pub rows: &'static [(usize, &'static [Option<usize>])],
}

impl Preset {
    pub fn series(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn printed(&self, i: usize, degree: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.0 == i).and_then(|r| r.1.get(degree - 1).copied().flatten())
    }
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "table-1",
        caption: "B_i(A_2/<x^2+y^2>)",
        n: 2,
        relation: "x^2+y^2",
        max_degree: 6,
        rows: &[
            (3, &[Some(0), Some(0), Some(2), Some(0), Some(0), Some(0)]),
            (4, &[Some(0), Some(0), Some(0), Some(2), Some(0), Some(0)]),
            (5, &[Some(0), Some(0), Some(0), Some(0), Some(4), Some(0)]),
        ],
    },
    Preset {
        name: "table-2",
        caption: "B_i(A_3/<x^2+y^2+z^2>)",
        n: 3,
        relation: "x^2+y^2+z^2",
        max_degree: 6,
        rows: &[
            (3, &[Some(0), Some(0), Some(8), Some(15), Some(16), Some(20)]),
            (4, &[Some(0), Some(0), Some(0), Some(18), Some(45), Some(48)]),
        ],
    },
    Preset {
        name: "table-3",
        caption: "B_i(A_3/<x^3+y^3+z^3>)",
        n: 3,
        relation: "x^3+y^3+z^3",
        max_degree: 6,
        rows: &[
            (3, &[Some(0), Some(0), Some(8), Some(24), Some(39), Some(45)]),
            (4, &[Some(0), Some(0), Some(0), Some(18), Some(71), Some(135)]),
        ],
    },
    Preset {
        name: "table-4",
        caption: "B_i(A_4/<x^2+y^2+z^2+w^2>)",
        n: 4,
        relation: "x^2+y^2+z^2+w^2",
        max_degree: 6,
        rows: &[
            (2, &[Some(0), Some(6), Some(16), Some(31), Some(48), Some(70)]),
            (3, &[Some(0), Some(0), Some(20), Some(64), Some(124), None]),
            (4, &[Some(0), Some(0), Some(0), Some(60), None, None]),
        ],
    },
    Preset {
        name: "table-5",
        caption: "B_i(A_4/<x^3+y^3+z^3+w^3>)",
        n: 4,
        relation: "x^3+y^3+z^3+w^3",
        max_degree: 5,
        rows: &[
            (2, &[Some(0), Some(6), Some(20), Some(42), Some(72)]),
            (3, &[Some(0), Some(0), Some(20), Some(80), Some(188)]),
        ],
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_consistent() {
        for p in PRESETS {
            for (_, row) in p.rows {
                assert_eq!(row.len(), p.max_degree, "{}", p.name);
            }
        }
        assert_eq!(find("table-4").unwrap().printed(4, 4), Some(60));
        assert_eq!(find("table-4").unwrap().printed(4, 5), None);
        assert!(find("table-6").is_none());
    }
}
