"""
Embedded citation table.
Every trace step in a verdict points at one of these keys; the quote is the
anchor text the step relies on, reproduced verbatim.
"""

CITATIONS: dict[str, dict[str, str]] = {
    # --- coefficients and Stein topology ---------------------------------------
    "field-coefficients": {
        "label": "coefficient convention",
        "quote": r"All homology and cohomology groups are taken with coefficients in a field.",
    },
    "stein-cw-dimension": {
        "label": "homotopy type of a Stein domain",
        "quote": r"$W$ has the homotopy type of a CW complex of dimension $\le n$",
    },
    "subcritical-onto": {
        "label": "surjectivity for fillings of hypersurfaces in subcritical Stein manifolds",
        "quote": r"is onto in every degree $j\ge 0$",
    },
    "homology-ball": {
        "label": "fillings of homology spheres in subcritical Stein manifolds",
        "quote": r"Any symplectically aspherical filling of $\Sigma$ is then a homology ball (resp. rational homology ball).",
    },

    # --- Milnor fiber and Brieskorn links --------------------------------------
    "milnor-sequence": {
        "label": "exact sequence of the Milnor fiber pair",
        "quote": r"0\to H_n(\Sigma)\to H_n(W)\stackrel {S} \to \mathrm{Hom}(H_n(W),{\mathbb Z})\to H_{n-1}(\Sigma)\to 0",
    },
    "milnor-intersection-form": {
        "label": "connecting map of the Milnor fiber pair",
        "quote": r"the map $S$ is given by the intersection form",
    },
    "milnor-number": {
        "label": "Milnor number of a Brieskorn singularity",
        "quote": r"\mu=(a_0-1)\dots(a_n-1)",
    },
    "seifert-tensor": {
        "label": "Seifert form of a Brieskorn singularity",
        "quote": r"its Seifert form is the tensor-product of blocks of dimension $a_i-1$",
    },
    "seifert-to-intersection": {
        "label": "intersection form from the Seifert form",
        "quote": r"S=A+(-1)^n {A^t}",
    },
    "link-connectivity": {
        "label": "connectivity of the link",
        "quote": r"The boundary $\Sigma:=\partial W$ is $(n-2)$-connected.",
    },
    "brieskorn-intersection-nonzero": {
        "label": "nonzero intersection form obstructs subcritical embeddings",
        "quote": r"If the intersection form on the middle-dimensional homology of the Milnor fiber is nonzero, then $(\Sigma,\xi)$ does not embed in a subcritical Stein manifold.",
    },
    "brieskorn-milnor-two": {
        "label": "Brieskorn manifolds with Milnor number at least 2",
        "quote": r"Brieskorn manifolds of dimension $2n-1$, $n\ge 3$ with Milnor number at least $2$ do not admit contact embeddings in subcritical Stein manifolds.",
    },
    "brieskorn-all-two-even": {
        "label": "all exponents 2, n even",
        "quote": r"For $n$ even the matrix of $A$ is symmetric, hence $S=A+A^t\neq 0$",
    },
    "brieskorn-all-two-odd": {
        "label": "all exponents 2, n odd",
        "quote": r"If $n$ is odd we cannot conclude.",
    },
    "brieskorn-exotic": {
        "label": "Brieskorn spheres carry exotic contact structures",
        "quote": r"The standard contact structure $\xi$ inherited from the Milnor fiber is exotic",
    },
    "brieskorn-not-sphere": {
        "label": "unit cotangent bundle of a sphere is not a sphere",
        "quote": r"$ST^*S^n$ is never diffeomorphic to $S^{2n-1}$",
    },

    # --- fillings of hypersurfaces in R^2n -------------------------------------
    "filling-duality": {
        "label": "Betti identity for fillings of hypersurfaces in R^2n",
        "quote": r"b_{p}(\Sigma)= b_{p}(W)+b_{2n-p-1}(W)",
    },
    "filling-same-betti": {
        "label": "uniqueness of Betti numbers of fillings",
        "quote": r"have the same Betti numbers",
    },
    "stein-low-degrees": {
        "label": "Stein fillings below the middle dimension",
        "quote": r"b_{p}(\Sigma)=b_{p}(W)\ \text{for}\ 0\leq p \leq n-2",
    },
    "stein-middle-degrees": {
        "label": "Stein fillings in the middle dimensions",
        "quote": r"b_{n-1}(\Sigma)=b_{n}(\Sigma)=b_{n}(W)+b_{n-1}(W)",
    },
    "stein-determined": {
        "label": "when the Stein filling is determined",
        "quote": r"It is completely determined by the homology of $\Sigma$ if $b_{n}(\Sigma)=0$ or $W$ is subcritical Stein.",
    },
    "stein-undetermined": {
        "label": "middle-degree ambiguity",
        "quote": r"except, maybe, in degree $n-1$ and $n$",
    },
    "hc-rank-formula": {
        "label": "rank of cylindrical contact homology from the boundary",
        "quote": r"the rank of $HC_{*}^0(\Sigma, \alpha)$ is determined by $H_{*}(\Sigma)$",
    },
    "hc-yau": {
        "label": "contact homology of subcritical Stein fillings",
        "quote": r"HC_{*}^0(\Sigma, \alpha ) \simeq H_{*}(W,\Sigma)\otimes H_{*}( {\mathbb C}P^\infty)[2]",
    },
    "hc-filling-sum": {
        "label": "contact homology as a sum over the filling",
        "quote": r"HC_{k}^0(\Sigma,\alpha) = \bigoplus_{m\geq 0} H_{k-2m+2}(W,\Sigma) = \bigoplus_{m\geq 0} H^{2n-2-k+2m}(W)",
    },

    # --- unit cotangent bundles ------------------------------------------------
    "sphere-bundle-euler-zero": {
        "label": "sphere bundle with vanishing Euler class",
        "quote": r"either the Euler class vanishes, and then $$b_{p}(ST^*L)= b_{p}(L)+b_{p-(n-1)}(L)$$",
    },
    "sphere-bundle-euler-nonzero": {
        "label": "sphere bundle with nonzero Euler class",
        "quote": r"b_{n}(ST^*L)=b_{n-1}(ST^*L)= b_{n-1}(L)=b_{1}(L)",
    },
    "sphere-bundle-poincare": {
        "label": "identity reduces to Poincare duality",
        "quote": r"that is the Poincar\'e duality formula",
    },
    "cotangent-impossible": {
        "label": "contradiction for orientable bases",
        "quote": r"This implies $b_{n}(L)=0$, which is impossible (at least for orientable $L$).",
    },
    "cotangent-r2n": {
        "label": "unit cotangent bundles with nonzero Euler class in R^2n",
        "quote": r"Let $L$ be an orientable manifold with non zero Euler class. Then $ST^*L$ has no contact embedding in $ {\mathbb R}^{2n}$",
    },
    "cotangent-r2n-surgery": {
        "label": "surgery on unit cotangent bundles, R^2n case",
        "quote": r"The same holds for any contact manifold obtained from such a $ST^*L$ by surgery of index $3\leq k\leq n-3$.",
    },
    "cotangent-gysin-vanishing": {
        "label": "Gysin sequence of the unit cotangent bundle",
        "quote": r"the map $H_{n}(ST^*L) \longrightarrow H_{n}(L)$ vanishes",
    },
    "cotangent-subcritical": {
        "label": "unit cotangent bundles in subcritical Stein manifolds",
        "quote": r"Then $ST^*L$ has no contact embedding in a subcritical Stein manifold.",
    },
    "cotangent-subcritical-surgery": {
        "label": "surgery on unit cotangent bundles, subcritical case",
        "quote": r"this also holds for any manifold obtained from $ST^*L$ by contact surgery of index $k \in [3,n-1]$",
    },
    "lagrangian-filling": {
        "label": "fillings of ST*L for Lagrangian L in R^2n",
        "quote": r"has the same homology as $DT^*L$ (and hence the homology of $L$)",
    },

    # --- circle bundles of negative line bundles -------------------------------
    "circle-gysin-degree-two": {
        "label": "degree-two Gysin computation for the circle bundle",
        "quote": r"H^{2}(\Sigma)=H^2(N)/ \langle [\beta]\rangle \oplus \ker \left ([\beta]\cup :H^{1}(N) \longrightarrow H^3(N)\right )",
    },
    "circle-inequality": {
        "label": "strict inequality for the circle bundle",
        "quote": r"b_{2}(\Sigma) < b_{2}(N)+b_{1}(N)=b_{2}(N)+b_{2n-2-1}(N)=b_2(W)+b_{2n-2-1}(W)",
    },
    "circle-r2n": {
        "label": "circle bundles of negative line bundles in R^2n",
        "quote": r"has no contact embedding in $({\mathbb R}^{2n}, \sigma_{0})$",
    },
    "circle-r2n-surgery": {
        "label": "surgery on circle bundles, R^2n case",
        "quote": r"of index  $k$ for any $k \in [3,n]$",
    },
    "circle-asphericity-necessary": {
        "label": "asphericity of the base is necessary",
        "quote": r"the manifold $({\mathbb C}P^{n-1}, \sigma_{0})$ is not symplectically aspherical",
    },
    "circle-subcritical": {
        "label": "circle bundles and subcritical fillings",
        "quote": r"does not bound a subcritical Stein manifold with vanishing first Chern class",
    },
    "circle-subcritical-sh": {
        "label": "positive symplectic homology of the circle bundle",
        "quote": r"SH^+_{*}(\Sigma) \simeq H_{*+n-1}(W,\Sigma) \simeq H_{*+n-3}(N)",
    },
    "circle-subcritical-vanishing": {
        "label": "vanishing on the subcritical side",
        "quote": r"But this last space vanishes for $*\leq 1$ while $H_{*+n-3}(N)$ is non-zero for $*=3-n$.",
    },
    "circle-subcritical-surgery": {
        "label": "surgery on circle bundles, subcritical case",
        "quote": r"The same holds for any contact manifold obtained by subcritical surgery on $(\Sigma, \xi)$ of index $\neq 2, 3$.",
    },

    # --- surgery and Mayer-Vietoris --------------------------------------------
    "surgery-high-index": {
        "label": "handles of index at least 4",
        "quote": r"H_{j}(A_{k}, \partial^{-}A_{k}) \simeq H_{j}(D^{k}, \partial D^{k})= 0",
    },
    "surgery-index-three": {
        "label": "handles of index 3 below the middle dimension",
        "quote": r"either the map $\partial_{W}$ is injective",
    },
    "surgery-index-three-middle": {
        "label": "handles of index 3 when n = 3",
        "quote": r"equals either $b_{2}(\Sigma^-)$ or $b_{2}(\Sigma^-)-1$",
    },
    "mv-bound": {
        "label": "Mayer-Vietoris bound for nested hypersurfaces",
        "quote": r"b_{j}(W_{1})\leq b_{j}(\Sigma_{1})+ \min(0, b_{j}(\Sigma_{2})-b_{j}(W_{2}\setminus V_{1 }))",
    },
}


def render_citations(keys: list[str]) -> list[dict[str, str]]:
    """Expand citation keys into {key, label, quote} records, sorted by key."""
    return [
        {"key": key, "label": CITATIONS[key]["label"], "quote": CITATIONS[key]["quote"]}
        for key in sorted(set(keys))
    ]
