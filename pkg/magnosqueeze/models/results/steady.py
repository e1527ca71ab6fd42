from pydantic import BaseModel, ConfigDict, Field, model_validator


class SteadyState(BaseModel):
    """Mean-field amplitudes of the driven system.

    `m_roots` lists every magnon amplitude compatible with the Kerr cubic, ordered by
    increasing modulus; `a_ss` and `b_ss` follow the selected root.
    """

    model_config = ConfigDict(frozen=True)

    a_ss: complex = Field(description="Photon amplitude <a>")
    b_ss: complex = Field(description="Phonon amplitude <b>")
    m_roots: list[complex] = Field(min_length=1, max_length=3, description="Candidate magnon amplitudes <m>")
    selected: int = Field(default=0, ge=0, description="Index of the chosen root")
    residuals: list[float] = Field(default_factory=list, description="|residual| of each root")
    near_degenerate: bool = Field(default=False, description="Two roots nearly coincide (bistability edge)")

    @model_validator(mode="after")
    def validate_selection(self):
        if self.selected >= len(self.m_roots):
            raise ValueError(f"Selected root {self.selected} out of range for {len(self.m_roots)} roots")
        return self

    @property
    def m_ss(self) -> complex:
        return self.m_roots[self.selected]
