//! The two presentations of order 128 shipped with the crate, each with the
//! frame that turns it into a loop.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bundled {
    pub name: &'static str,
    pub pc: &'static str,
    pub frame: &'static str,
}

pub const G128_731: Bundled = Bundled {
    name: "g128_731",
    pc: include_str!("../data/g128_731.pc"),
    frame: include_str!("../data/g128_731.frame"),
};

pub const G128_742: Bundled = Bundled {
    name: "g128_742",
    pc: include_str!("../data/g128_742.pc"),
    frame: include_str!("../data/g128_742.frame"),
};

pub const ALL: [Bundled; 2] = [G128_731, G128_742];

pub fn by_name(name: &str) -> Option<Bundled> {
    ALL.into_iter().find(|b| b.name == name)
}
