use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    A,
    B,
    R1,
    R2,
}

impl Node {
    pub const ALL: [Node; 4] = [Node::A, Node::B, Node::R1, Node::R2];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    /// Exchanges the terminals, leaves relays alone.
    pub fn mirrored(self) -> Node {
        match self {
            Node::A => Node::B,
            Node::B => Node::A,
            r => r,
        }
    }
}

/// A set of nodes stored as a 4-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(u8);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);
    pub const ALL: NodeSet = NodeSet(0b1111);

    pub const fn from_bits(bits: u8) -> Self {
        NodeSet(bits & 0b1111)
    }

    pub fn of(nodes: &[Node]) -> Self {
        NodeSet(nodes.iter().fold(0, |m, n| m | n.bit()))
    }

    pub fn contains(self, n: Node) -> bool {
        self.0 & n.bit() != 0
    }

    pub fn complement(self) -> Self {
        NodeSet(!self.0 & 0b1111)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Node> {
        Node::ALL.into_iter().filter(move |n| self.contains(*n))
    }

    pub fn mirrored(self) -> Self {
        NodeSet::from_iter(self.iter().map(Node::mirrored))
    }
}

impl FromIterator<Node> for NodeSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        NodeSet(iter.into_iter().fold(0, |m, n| m | n.bit()))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One of the 14 useful half-duplex states: every node either transmits or
/// receives, and the all-transmit / all-receive configurations are excluded.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfDuplexState {
    id: u8,
    transmitters: NodeSet,
}

const A: u8 = 0b0001;
const B: u8 = 0b0010;
const R1: u8 = 0b0100;
const R2: u8 = 0b1000;

const fn st(id: u8, tx: u8) -> HalfDuplexState {
    HalfDuplexState { id, transmitters: NodeSet::from_bits(tx) }
}

/// States `1..=14` in order (`STATES[i - 1].id() == i`).
pub const STATES: [HalfDuplexState; 14] = [
    st(1, A | R2),       // A -> R1, R2 -> B
    st(2, A | R1),       // A -> R2, R1 -> B
    st(3, A),            // A -> {R1, R2}
    st(4, A | R1 | R2),  // {R1, R2} -> B
    st(5, B | R2),       // B -> R1, R2 -> A
    st(6, B | R1),       // B -> R2, R1 -> A
    st(7, B),            // B -> {R1, R2}
    st(8, B | R1 | R2),  // {R1, R2} -> A
    st(9, A | B | R2),   // {A, B} -> R1
    st(10, A | B | R1),  // {A, B} -> R2
    st(11, R1),          // R1 -> {A, B}
    st(12, R2),          // R2 -> {A, B}
    st(13, R1 | R2),     // {R1, R2} -> {A, B}
    st(14, A | B),       // {A, B} -> {R1, R2}
];

impl HalfDuplexState {
    pub fn get(id: u8) -> Option<Self> {
        (1..=14).contains(&id).then(|| STATES[id as usize - 1])
    }

    /// Like [`HalfDuplexState::get`] for ids known to be valid.
    pub fn of(id: u8) -> Self {
        Self::get(id).unwrap_or_else(|| panic!("no half-duplex state {id}"))
    }

    pub fn id(self) -> u8 {
        self.id
    }

    pub fn transmitters(self) -> NodeSet {
        self.transmitters
    }

    pub fn receivers(self) -> NodeSet {
        self.transmitters.complement()
    }

    pub fn is_transmitting(self, n: Node) -> bool {
        self.transmitters.contains(n)
    }

    /// The state with `A` and `B` exchanged (1 <-> 5, 2 <-> 6, 3 <-> 7, 4 <-> 8;
    /// states 9..=14 map to themselves).
    pub fn mirrored(self) -> Self {
        let tx = self.transmitters.mirrored();
        *STATES.iter().find(|s| s.transmitters == tx).expect("state set is closed under A<->B")
    }
}

impl fmt::Debug for HalfDuplexState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}{:?}", self.id, self.transmitters)
    }
}
