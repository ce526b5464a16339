#include "fintop/fixtures.hpp"

// Generated from the files under fixtures/; a test keeps the two in sync.

namespace fintop {

const std::map<std::string, std::string>& bundled_fixture_files() {
  static const std::map<std::string, std::string> files = {
      {"FIX-A/H.json",
       R"fx({
  "action": {},
  "category": "category.json",
  "sets": {
    "pt": [
      "a",
      "b",
      "c",
      "d",
      "e"
    ]
  }
}
)fx"},
      {"FIX-A/P.json",
       R"fx({
  "action": {},
  "category": "category.json",
  "sets": {
    "pt": [
      "p1",
      "p2"
    ]
  }
}
)fx"},
      {"FIX-A/Q.json",
       R"fx({
  "action": {},
  "category": "category.json",
  "sets": {
    "pt": [
      "q"
    ]
  }
}
)fx"},
      {"FIX-A/category.json",
       R"fx({
  "compose": [],
  "morphisms": [],
  "objects": [
    "pt"
  ]
}
)fx"},
      {"FIX-A/f.json",
       R"fx({
  "components": {
    "pt": {
      "p1": "q",
      "p2": "q"
    }
  },
  "source": "P.json",
  "target": "Q.json"
}
)fx"},
      {"FIX-A/fixture.json",
       R"fx({
  "arrows": {
    "f": "f.json",
    "h": "h.json"
  },
  "category": "category.json",
  "expected": [
    {
      "provenance": "[DERIVED] sections of h over the two fibers: 2*3",
      "query": "carrier_size(pt)",
      "value": 6
    }
  ],
  "name": "FIX-A",
  "presheaves": {
    "H": "H.json",
    "P": "P.json",
    "Q": "Q.json"
  }
}
)fx"},
      {"FIX-A/h.json",
       R"fx({
  "components": {
    "pt": {
      "a": "p1",
      "b": "p1",
      "c": "p2",
      "d": "p2",
      "e": "p2"
    }
  },
  "source": "H.json",
  "target": "P.json"
}
)fx"},
      {"FIX-B/H.json",
       R"fx({
  "action": {
    "u": {
      "x1": "z1",
      "x2": "z2",
      "x3": "z3"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "z1",
      "z2",
      "z3"
    ],
    "o1": [
      "x1",
      "x2",
      "x3"
    ]
  }
}
)fx"},
      {"FIX-B/P.json",
       R"fx({
  "action": {
    "u": {
      "p1": "r1",
      "p2": "r2"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "r1",
      "r2"
    ],
    "o1": [
      "p1",
      "p2"
    ]
  }
}
)fx"},
      {"FIX-B/Q.json",
       R"fx({
  "action": {
    "u": {
      "q1": "q0"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "q0"
    ],
    "o1": [
      "q1"
    ]
  }
}
)fx"},
      {"FIX-B/category.json",
       R"fx({
  "compose": [],
  "morphisms": [
    {
      "cod": "o1",
      "dom": "o0",
      "id": "u"
    }
  ],
  "objects": [
    "o0",
    "o1"
  ]
}
)fx"},
      {"FIX-B/f.json",
       R"fx({
  "components": {
    "o0": {
      "r1": "q0",
      "r2": "q0"
    },
    "o1": {
      "p1": "q1",
      "p2": "q1"
    }
  },
  "source": "P.json",
  "target": "Q.json"
}
)fx"},
      {"FIX-B/fixture.json",
       R"fx({
  "arrows": {
    "f": "f.json",
    "h": "h.json"
  },
  "category": "category.json",
  "expected": [
    {
      "provenance": "[DERIVED] compatible section families: free choice over p2 only",
      "query": "carrier_size(o1)",
      "value": 2
    },
    {
      "provenance": "[DERIVED] sections of h over the stage-0 fibers: 1*2",
      "query": "carrier_size(o0)",
      "value": 2
    }
  ],
  "name": "FIX-B",
  "presheaves": {
    "H": "H.json",
    "P": "P.json",
    "Q": "Q.json"
  }
}
)fx"},
      {"FIX-B/h.json",
       R"fx({
  "components": {
    "o0": {
      "z1": "r1",
      "z2": "r2",
      "z3": "r2"
    },
    "o1": {
      "x1": "p1",
      "x2": "p2",
      "x3": "p2"
    }
  },
  "source": "H.json",
  "target": "P.json"
}
)fx"},
      {"FIX-C/H.json",
       R"fx({
  "action": {
    "s": {
      "He1": "Hu",
      "He2": "Hu"
    },
    "t": {
      "He1": "Hv",
      "He2": "Hv"
    }
  },
  "category": "category.json",
  "sets": {
    "E": [
      "He1",
      "He2"
    ],
    "V": [
      "Hu",
      "Hv"
    ]
  }
}
)fx"},
      {"FIX-C/P.json",
       R"fx({
  "action": {
    "s": {
      "Pe": "Pu"
    },
    "t": {
      "Pe": "Pv"
    }
  },
  "category": "category.json",
  "sets": {
    "E": [
      "Pe"
    ],
    "V": [
      "Pu",
      "Pv"
    ]
  }
}
)fx"},
      {"FIX-C/Q.json",
       R"fx({
  "action": {
    "s": {
      "Qe": "Qu"
    },
    "t": {
      "Qe": "Qu"
    }
  },
  "category": "category.json",
  "sets": {
    "E": [
      "Qe"
    ],
    "V": [
      "Qu"
    ]
  }
}
)fx"},
      {"FIX-C/category.json",
       R"fx({
  "compose": [],
  "morphisms": [
    {
      "cod": "E",
      "dom": "V",
      "id": "s"
    },
    {
      "cod": "E",
      "dom": "V",
      "id": "t"
    }
  ],
  "objects": [
    "V",
    "E"
  ]
}
)fx"},
      {"FIX-C/f.json",
       R"fx({
  "components": {
    "E": {
      "Pe": "Qe"
    },
    "V": {
      "Pu": "Qu",
      "Pv": "Qu"
    }
  },
  "source": "P.json",
  "target": "Q.json"
}
)fx"},
      {"FIX-C/fixture.json",
       R"fx({
  "arrows": {
    "f": "f.json",
    "h": "h.json"
  },
  "category": "category.json",
  "expected": [
    {
      "provenance": "[DERIVED] both vertex fibers are singletons",
      "query": "carrier_size(V)",
      "value": 1
    },
    {
      "provenance": "[DERIVED] free edge choice; endpoints forced by the actions",
      "query": "carrier_size(E)",
      "value": 2
    }
  ],
  "name": "FIX-C",
  "presheaves": {
    "H": "H.json",
    "P": "P.json",
    "Q": "Q.json"
  }
}
)fx"},
      {"FIX-C/h.json",
       R"fx({
  "components": {
    "E": {
      "He1": "Pe",
      "He2": "Pe"
    },
    "V": {
      "Hu": "Pu",
      "Hv": "Pv"
    }
  },
  "source": "H.json",
  "target": "P.json"
}
)fx"},
      {"FIX-D/H.json",
       R"fx({
  "action": {
    "u": {
      "x1": "z1",
      "x2": "z2",
      "x3": "z3"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "z1",
      "z2",
      "z3"
    ],
    "o1": [
      "x1",
      "x2",
      "x3"
    ]
  }
}
)fx"},
      {"FIX-D/M.json",
       R"fx({
  "action": {
    "u": {
      "n0": "m0"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "m0",
      "m1"
    ],
    "o1": [
      "n0"
    ]
  }
}
)fx"},
      {"FIX-D/N.json",
       R"fx({
  "action": {
    "u": {
      "n0": "m0",
      "n1": "m0"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "m0"
    ],
    "o1": [
      "n0",
      "n1"
    ]
  }
}
)fx"},
      {"FIX-D/P.json",
       R"fx({
  "action": {
    "u": {
      "p1": "r1",
      "p2": "r2"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "r1",
      "r2"
    ],
    "o1": [
      "p1",
      "p2"
    ]
  }
}
)fx"},
      {"FIX-D/Q.json",
       R"fx({
  "action": {
    "u": {
      "q1": "q0"
    }
  },
  "category": "category.json",
  "sets": {
    "o0": [
      "q0"
    ],
    "o1": [
      "q1"
    ]
  }
}
)fx"},
      {"FIX-D/category.json",
       R"fx({
  "compose": [],
  "morphisms": [
    {
      "cod": "o1",
      "dom": "o0",
      "id": "u"
    }
  ],
  "objects": [
    "o0",
    "o1"
  ]
}
)fx"},
      {"FIX-D/f.json",
       R"fx({
  "components": {
    "o0": {
      "r1": "q0",
      "r2": "q0"
    },
    "o1": {
      "p1": "q1",
      "p2": "q1"
    }
  },
  "source": "P.json",
  "target": "Q.json"
}
)fx"},
      {"FIX-D/fixture.json",
       R"fx({
  "arrows": {
    "f": "f.json",
    "h": "h.json"
  },
  "category": "category.json",
  "expected": [
    {
      "provenance": "[DERIVED] same section count as the plain interval case",
      "query": "carrier_size(o1)",
      "value": 2
    },
    {
      "provenance": "[DERIVED] same section count as the plain interval case",
      "query": "carrier_size(o0)",
      "value": 2
    },
    {
      "provenance": "[DERIVED] the dense cover glues n0 and n1",
      "query": "sheaf_size(N,o1)",
      "value": 1
    },
    {
      "provenance": "[DERIVED] one matching family over the only cover",
      "query": "sheaf_size(N,o0)",
      "value": 1
    },
    {
      "provenance": "[DERIVED] one family per stage-0 value over the dense cover",
      "query": "sheaf_size(M,o1)",
      "value": 2
    },
    {
      "provenance": "[DERIVED] matching families at stage 0 are its elements",
      "query": "sheaf_size(M,o0)",
      "value": 2
    }
  ],
  "name": "FIX-D",
  "presheaves": {
    "H": "H.json",
    "M": "M.json",
    "N": "N.json",
    "P": "P.json",
    "Q": "Q.json"
  },
  "topology": "topology.json"
}
)fx"},
      {"FIX-D/h.json",
       R"fx({
  "components": {
    "o0": {
      "z1": "r1",
      "z2": "r2",
      "z3": "r2"
    },
    "o1": {
      "x1": "p1",
      "x2": "p2",
      "x3": "p2"
    }
  },
  "source": "H.json",
  "target": "P.json"
}
)fx"},
      {"FIX-D/topology.json",
       R"fx({
  "category": "category.json",
  "covers": {
    "o1": [
      [
        "u"
      ]
    ]
  },
  "saturate": true
}
)fx"},
  };
  return files;
}

}  // namespace fintop
