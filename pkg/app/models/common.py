from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict
from pydantic.json_schema import JsonSchemaValue, GetJsonSchemaHandler
from pydantic_core import core_schema

from app.services.exactq import rational_from_string, rational_to_string


class PyRational:
    """pydantic adapter that reads rationals from "p/q" text (or ints) and always writes them back as text."""

    @classmethod
    def validate(cls, v: Any) -> Fraction:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int) and not isinstance(v, bool):
            return Fraction(v)
        if isinstance(v, str):
            return rational_from_string(v)
        raise ValueError("Invalid rational")

    @classmethod
    def __get_pydantic_core_schema__(cls, _source_type: Any, _handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.validate,
            serialization=core_schema.plain_serializer_function_ser_schema(rational_to_string),
        )

    @classmethod
    def __get_pydantic_json_schema__(
        cls, core_schema: core_schema.CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {"type": "string", "pattern": r"^[+-]?\d+(/\d+)?$"}


RationalField = Annotated[Fraction, PyRational]


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)
